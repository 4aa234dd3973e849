use std::cell::{OnceCell, RefCell};

use super::form::{BoundForm, Term};
use super::{BoundId, BoundMode, BoundResult};
use crate::calculus::AbsoluteValue;
use crate::eigen::largest_eigenvalue;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::params::{binomial, check_alpha, check_power, check_power_index, BoundParams};
use crate::radius::{numerical_radius, DEFAULT_TOL};

fn cached(cell: &OnceCell<f64>, f: impl FnOnce() -> Result<f64>) -> Result<f64> {
    if let Some(v) = cell.get() {
        return Ok(*v);
    }
    let v = f()?;
    Ok(*cell.get_or_init(|| v))
}

/// Memo keyed by a pair of exponents.
#[derive(Default)]
struct PowerMemo(RefCell<Vec<((u64, u64), f64)>>);

impl PowerMemo {
    fn get(&self, p: f64, q: f64, f: impl FnOnce() -> Result<f64>) -> Result<f64> {
        let key = (p.to_bits(), q.to_bits());
        if let Some(&(_, v)) = self.0.borrow().iter().find(|(k, _)| *k == key) {
            return Ok(v);
        }
        let v = f()?;
        self.0.borrow_mut().push((key, v));
        Ok(v)
    }
}

/// `||A + B||` for positive semidefinite `A`, `B`.
fn psd_sum_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(largest_eigenvalue(&(a + b))?.max(0.0))
}

/// One matrix with the spectral data every single-operator bound reuses.
pub struct SingleOperator {
    t: ComplexMatrix,
    abs: AbsoluteValue,
    abs_adj: AbsoluteValue,
    w: OnceCell<f64>,
    w_square: OnceCell<f64>,
    sum_norms: PowerMemo,
    product_radii: PowerMemo,
}

impl SingleOperator {
    pub fn new(t: ComplexMatrix) -> Result<Self> {
        let abs = AbsoluteValue::of(&t)?;
        let abs_adj = AbsoluteValue::of(&t.adjoint())?;
        Ok(Self {
            t,
            abs,
            abs_adj,
            w: OnceCell::new(),
            w_square: OnceCell::new(),
            sum_norms: PowerMemo::default(),
            product_radii: PowerMemo::default(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn abs(&self) -> &AbsoluteValue {
        &self.abs
    }

    pub fn abs_adjoint(&self) -> &AbsoluteValue {
        &self.abs_adj
    }

    /// `w(T)`.
    pub fn w(&self) -> Result<f64> {
        cached(&self.w, || numerical_radius(&self.t, DEFAULT_TOL))
    }

    /// `w(T^2)`.
    pub fn w_square(&self) -> Result<f64> {
        cached(&self.w_square, || numerical_radius(&(&self.t * &self.t), DEFAULT_TOL))
    }

    /// `||T||`.
    pub fn norm(&self) -> f64 {
        self.abs.singular_values().last().copied().unwrap_or(0.0)
    }

    /// `|| |T|^p + |T*|^q ||`.
    pub fn sum_norm(&self, p: f64, q: f64) -> Result<f64> {
        self.sum_norms
            .get(p, q, || psd_sum_norm(&self.abs.power(p), &self.abs_adj.power(q)))
    }

    /// `w(|T*|^q |T|^p)`.
    pub fn product_radius(&self, p: f64, q: f64) -> Result<f64> {
        self.product_radii.get(p, q, || {
            numerical_radius(&(&self.abs_adj.power(q) * &self.abs.power(p)), DEFAULT_TOL)
        })
    }
}

/// The inputs of a bound: `T`, and `S` for product bounds (`S = T` when a
/// single-operator bound is evaluated).
pub struct BoundInputs<'a> {
    t: &'a SingleOperator,
    s: &'a SingleOperator,
    w_product: OnceCell<f64>,
    sum_norms: PowerMemo,
    product_radii: PowerMemo,
}

impl<'a> BoundInputs<'a> {
    pub fn single(t: &'a SingleOperator) -> Self {
        Self {
            t,
            s: t,
            w_product: OnceCell::new(),
            sum_norms: PowerMemo::default(),
            product_radii: PowerMemo::default(),
        }
    }

    pub fn pair(t: &'a SingleOperator, s: &'a SingleOperator) -> Result<Self> {
        t.matrix().ensure_same_dim(s.matrix())?;
        Ok(Self { s, ..Self::single(t) })
    }

    pub fn t(&self) -> &SingleOperator {
        self.t
    }

    pub fn s(&self) -> &SingleOperator {
        self.s
    }

    /// `w(T*S)`, equal to `w(S*T)` since the two are adjoint.
    pub fn w_product(&self) -> Result<f64> {
        cached(&self.w_product, || {
            numerical_radius(&(&self.t.matrix().adjoint() * self.s.matrix()), DEFAULT_TOL)
        })
    }

    /// `|| |T|^p + |S|^p ||`.
    pub fn pair_sum_norm(&self, p: f64) -> Result<f64> {
        self.sum_norms
            .get(p, p, || psd_sum_norm(&self.t.abs.power(p), &self.s.abs.power(p)))
    }

    /// `w(|S|^p |T|^p)`.
    pub fn pair_product_radius(&self, p: f64) -> Result<f64> {
        self.product_radii.get(p, p, || {
            numerical_radius(&(&self.s.abs.power(p) * &self.t.abs.power(p)), DEFAULT_TOL)
        })
    }

    /// Every term of `id` evaluated on these inputs.
    pub fn form(&self, id: BoundId, params: &BoundParams) -> Result<BoundForm> {
        build(id, params, Some(self))
    }
}

/// Homographic coefficients of `id` with no matrix attached (term values
/// are NaN). Lambda enters only through each term's `coefficient`.
pub fn coefficients(id: BoundId, params: &BoundParams) -> Result<Vec<Term>> {
    Ok(build(id, params, None)?.terms)
}

struct Builder<'i, 'a> {
    inputs: Option<&'i BoundInputs<'a>>,
    terms: Vec<Term>,
}

impl<'i, 'a> Builder<'i, 'a> {
    fn add(&mut self, mut term: Term, value: impl FnOnce(&BoundInputs<'a>) -> Result<f64>) -> Result<()> {
        if let Some(inputs) = self.inputs {
            term.value = value(inputs)?;
        }
        self.terms.push(term);
        Ok(())
    }
}

fn build(id: BoundId, params: &BoundParams, inputs: Option<&BoundInputs<'_>>) -> Result<BoundForm> {
    let mut b = Builder {
        inputs,
        terms: Vec::new(),
    };
    let r = params.r;
    let exponent = match id {
        BoundId::OpNorm => {
            b.add(Term::constant("||T||", 1.0), |i| Ok(i.t.norm()))?;
            1.0
        }
        BoundId::Kittaneh => {
            b.add(Term::constant("|| |T| + |T*| ||", 0.5), |i| i.t.sum_norm(1.0, 1.0))?;
            1.0
        }
        BoundId::ElHaddad => {
            check_power(r)?;
            b.add(Term::constant("|| |T|^2r + |T*|^2r ||", 0.5), |i| {
                i.t.sum_norm(2.0 * r, 2.0 * r)
            })?;
            2.0 * r
        }
        BoundId::AbuOmar => {
            b.add(Term::constant("|| |T|^2 + |T*|^2 ||", 0.25), |i| i.t.sum_norm(2.0, 2.0))?;
            b.add(Term::constant("w(T^2)", 0.5), |i| i.t.w_square())?;
            2.0
        }
        BoundId::Bhunia => {
            b.add(Term::constant("|| |T|^2 + |T*|^2 ||", 0.25), |i| i.t.sum_norm(2.0, 2.0))?;
            b.add(Term::constant("w(|T| |T*|)", 0.5), |i| i.t.product_radius(1.0, 1.0))?;
            2.0
        }
        BoundId::Dragomir => {
            check_power(r)?;
            b.add(Term::constant("|| |T|^2r + |S|^2r ||", 0.5), |i| {
                i.pair_sum_norm(2.0 * r)
            })?;
            r
        }
        BoundId::AlDolat => {
            b.add(Term::linear("|| |T|^2 + |S|^2 ||", 0.5, 0.0), |i| i.pair_sum_norm(2.0))?;
            b.add(Term::fixed("|| |T|^4 + |S|^4 ||", 0.0, 0.5), |i| i.pair_sum_norm(4.0))?;
            2.0
        }
        BoundId::ProductRefinement => {
            check_power(r)?;
            b.add(Term::linear("|| |T|^2r + |S|^2r ||", 0.5, 0.0), |i| {
                i.pair_sum_norm(2.0 * r)
            })?;
            b.add(Term::fixed("|| |T|^4r + |S|^4r ||", 0.0, 0.25), |i| {
                i.pair_sum_norm(4.0 * r)
            })?;
            b.add(Term::fixed("w(|S|^2r |T|^2r)", 0.0, 0.5), |i| {
                i.pair_product_radius(2.0 * r)
            })?;
            2.0 * r
        }
        BoundId::MixedSchwarzRefinement => {
            let alpha = params.alpha;
            check_alpha(alpha)?;
            let (g2, h2) = (2.0 * alpha, 2.0 * (1.0 - alpha));
            b.add(Term::linear("|| g^2(|T|) + h^2(|T*|) ||", 0.5, 0.0), |i| {
                i.t.sum_norm(g2, h2)
            })?;
            b.add(Term::fixed("|| g^4(|T|) + h^4(|T*|) ||", 0.0, 0.25), |i| {
                i.t.sum_norm(2.0 * g2, 2.0 * h2)
            })?;
            b.add(Term::fixed("w(h^2(|T*|) g^2(|T|))", 0.0, 0.5), |i| {
                i.t.product_radius(g2, h2)
            })?;
            2.0
        }
        BoundId::BuzanoRefinement => {
            b.add(Term::fixed("|| |T|^4 + |T*|^4 ||", 2.0 / 32.0, 3.0 / 32.0), |i| {
                i.t.sum_norm(4.0, 4.0)
            })?;
            b.add(Term::fixed("w(|T*|^2 |T|^2)", 2.0 / 16.0, 3.0 / 16.0), |i| {
                i.t.product_radius(2.0, 2.0)
            })?;
            b.add(
                Term::fixed("w(T^2) || |T|^2 + |T*|^2 ||", 6.0 / 16.0, 5.0 / 16.0),
                |i| Ok(i.t.w_square()? * i.t.sum_norm(2.0, 2.0)?),
            )?;
            4.0
        }
        BoundId::BuzanoSplitRefinement => {
            b.add(Term::fixed("|| |T|^4 + |T*|^4 ||", 0.0, 1.0 / 16.0), |i| {
                i.t.sum_norm(4.0, 4.0)
            })?;
            b.add(Term::fixed("w(|T*|^2 |T|^2)", 0.0, 1.0 / 8.0), |i| {
                i.t.product_radius(2.0, 2.0)
            })?;
            b.add(Term::fixed("w^2(T^2)", 0.0, 0.25), |i| Ok(i.t.w_square()?.powi(2)))?;
            b.add(Term::fixed("|| |T|^2 + |T*|^2 || w(T^2)", 0.0, 0.25), |i| {
                Ok(i.t.sum_norm(2.0, 2.0)? * i.t.w_square()?)
            })?;
            b.add(Term::linear("|| |T|^2 + |T*|^2 ||", 0.25, 0.0), |i| {
                i.t.sum_norm(2.0, 2.0)
            })?;
            b.add(Term::linear("w(T^2)", 0.5, 0.0), |i| i.t.w_square())?;
            4.0
        }
        BoundId::BinomialRefinement => {
            let n = params.n;
            check_power_index(n)?;
            let nf = n as f64;
            let c = 0.5f64.powi(2 * n as i32 + 2);
            b.add(Term::fixed("|| |T|^4n + |T*|^4n ||", c, 2.0 * c), |i| {
                i.t.sum_norm(4.0 * nf, 4.0 * nf)
            })?;
            b.add(Term::fixed("w(|T*|^2n |T|^2n)", 2.0 * c, 4.0 * c), |i| {
                i.t.product_radius(2.0 * nf, 2.0 * nf)
            })?;
            b.add(Term::fixed("|| |T|^2n + |T*|^2n || w^n(T^2)", 2.0 * c, 0.0), |i| {
                Ok(i.t.sum_norm(2.0 * nf, 2.0 * nf)? * i.t.w_square()?.powi(n as i32))
            })?;
            b.add(
                Term::fixed("sum_r C(2n,r) || |T|^2r + |T*|^2r || w^(2n-r)(T^2)", 2.0 * c, 2.0 * c),
                |i| {
                    let w2 = i.t.w_square()?;
                    (1..2 * n).try_fold(0.0, |acc, k| {
                        let kf = k as f64;
                        let weight = binomial(2 * n as u64, k as u64) as f64;
                        Ok(acc + weight * i.t.sum_norm(2.0 * kf, 2.0 * kf)? * w2.powi((2 * n - k) as i32))
                    })
                },
            )?;
            4.0 * nf
        }
        BoundId::BinomialFirstOrder => {
            b.add(Term::fixed("|| |T|^4 + |T*|^4 ||", 1.0 / 8.0, 2.0 / 8.0), |i| {
                i.t.sum_norm(4.0, 4.0)
            })?;
            b.add(Term::fixed("|| |T|^2 + |T*|^2 || w(T^2)", 3.0 / 8.0, 2.0 / 8.0), |i| {
                Ok(i.t.sum_norm(2.0, 2.0)? * i.t.w_square()?)
            })?;
            4.0
        }
    };
    let w = match inputs {
        None => f64::NAN,
        Some(i) if id.is_product() => i.w_product()?,
        Some(i) => i.t.w()?,
    };
    Ok(BoundForm {
        id,
        params: *params,
        terms: b.terms,
        exponent,
        w,
    })
}

/// Every mode of `id` on `T` (and `S` for product bounds; `S = T` if absent)
/// at `params.lambda`.
pub fn evaluate_bound(
    id: BoundId,
    t: &ComplexMatrix,
    s: Option<&ComplexMatrix>,
    params: &BoundParams,
) -> Result<Vec<BoundResult>> {
    let t = SingleOperator::new(t.clone())?;
    let s = match s {
        Some(s) if id.is_product() => Some(SingleOperator::new(s.clone())?),
        _ => None,
    };
    let inputs = match &s {
        Some(s) => BoundInputs::pair(&t, s)?,
        None => BoundInputs::single(&t),
    };
    inputs.form(id, params)?.evaluate(params.lambda)
}

fn single_mode(
    id: BoundId,
    t: &ComplexMatrix,
    s: Option<&ComplexMatrix>,
    params: &BoundParams,
    mode: BoundMode,
) -> Result<BoundResult> {
    let mut all = evaluate_bound(id, t, s, params)?;
    let idx = all.iter().position(|r| r.mode == mode).unwrap_or(0);
    Ok(all.swap_remove(idx))
}

/// `op_norm`, `kittaneh`, `el_haddad`, `abu_omar` or `bhunia`.
pub fn bound_classical(t: &ComplexMatrix, name: &str, r: f64) -> Result<BoundResult> {
    let id: BoundId = name.parse()?;
    if !matches!(
        id,
        BoundId::OpNorm | BoundId::Kittaneh | BoundId::ElHaddad | BoundId::AbuOmar | BoundId::Bhunia
    ) {
        return Err(Error::UnknownBound(format!(
            "{name} is not a classical single-operator bound"
        )));
    }
    let params = BoundParams::default().with_r(r);
    single_mode(id, t, None, &params, BoundMode::ExplicitCertificate)
}

/// `dragomir` or `al_dolat` (the latter in inequality-check mode).
pub fn bound_product_classical(
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    name: &str,
    r: f64,
    lambda: f64,
) -> Result<BoundResult> {
    let id: BoundId = name.parse()?;
    if !matches!(id, BoundId::Dragomir | BoundId::AlDolat) {
        return Err(Error::UnknownBound(format!("{name} is not a classical product bound")));
    }
    let params = BoundParams::default().with_r(r).with_lambda(lambda);
    single_mode(id, t, Some(s), &params, BoundMode::InequalityCheck)
}

/// Product refinement in both modes: inequality-check then explicit-certificate.
pub fn bound_th2(t: &ComplexMatrix, s: &ComplexMatrix, r: f64, lambda: f64) -> Result<Vec<BoundResult>> {
    let params = BoundParams::default().with_r(r).with_lambda(lambda);
    evaluate_bound(BoundId::ProductRefinement, t, Some(s), &params)
}

/// Mixed Schwarz refinement in both modes.
pub fn bound_th3(t: &ComplexMatrix, alpha: f64, lambda: f64) -> Result<Vec<BoundResult>> {
    let params = BoundParams::default().with_alpha(alpha).with_lambda(lambda);
    evaluate_bound(BoundId::MixedSchwarzRefinement, t, None, &params)
}

pub fn bound_th4(t: &ComplexMatrix, lambda: f64) -> Result<BoundResult> {
    let params = BoundParams::default().with_lambda(lambda);
    single_mode(
        BoundId::BuzanoRefinement,
        t,
        None,
        &params,
        BoundMode::ExplicitCertificate,
    )
}

/// Split Buzano refinement in both modes; the certificate bounds `w^2`.
pub fn bound_th5(t: &ComplexMatrix, lambda: f64) -> Result<Vec<BoundResult>> {
    let params = BoundParams::default().with_lambda(lambda);
    evaluate_bound(BoundId::BuzanoSplitRefinement, t, None, &params)
}

pub fn bound_th6(t: &ComplexMatrix, n: u32, lambda: f64) -> Result<BoundResult> {
    let params = BoundParams::default().with_n(n).with_lambda(lambda);
    single_mode(
        BoundId::BinomialRefinement,
        t,
        None,
        &params,
        BoundMode::ExplicitCertificate,
    )
}

pub fn bound_cor_bomi(t: &ComplexMatrix, lambda: f64) -> Result<BoundResult> {
    let params = BoundParams::default().with_lambda(lambda);
    single_mode(
        BoundId::BinomialFirstOrder,
        t,
        None,
        &params,
        BoundMode::ExplicitCertificate,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j() -> ComplexMatrix {
        ComplexMatrix::shift(2)
    }

    fn i2() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn classical_examples() {
        let k = bound_classical(&j(), "kittaneh", 1.0).unwrap();
        assert!(close(k.rhs_value, 0.5, 1e-12) && close(k.w_power_value, 0.5, 1e-12) && k.holds);
        let a = bound_classical(&j(), "abu_omar", 1.0).unwrap();
        assert!(close(a.rhs_value, 0.25, 1e-12) && close(a.w_power_value, 0.25, 1e-12));
        let e = bound_classical(&i2(), "el_haddad", 1.0).unwrap();
        assert!(close(e.rhs_value, 1.0, 1e-12) && close(e.w_power_value, 1.0, 1e-12));
        assert_eq!(e.exponent_p, 2.0);
        let o = bound_classical(&j(), "op_norm", 1.0).unwrap();
        assert!(close(o.rhs_value, 1.0, 1e-14) && o.exponent_p == 1.0);
        assert!(matches!(bound_classical(&j(), "th4", 1.0), Err(Error::UnknownBound(_))));
        assert!(matches!(
            bound_classical(&j(), "nope", 1.0),
            Err(Error::UnknownBound(_))
        ));
    }

    #[test]
    fn product_examples() {
        let d = bound_product_classical(&i2(), &i2(), "dragomir", 1.0, 1.0).unwrap();
        assert!(close(d.rhs_value, 1.0, 1e-12) && close(d.w_power_value, 1.0, 1e-12));
        let d = bound_product_classical(&j(), &j(), "dragomir", 1.0, 1.0).unwrap();
        assert!(close(d.rhs_value, 1.0, 1e-12) && close(d.w_power_value, 1.0, 1e-12));
        let a = bound_product_classical(&i2(), &i2(), "al_dolat", 1.0, 3.0).unwrap();
        assert!(close(a.rhs_value, 1.0, 1e-12) && a.mode == BoundMode::InequalityCheck);
        assert!(bound_product_classical(&i2(), &i2(), "al_dolat", 1.0, 0.0).is_ok());
        assert!(matches!(
            bound_product_classical(&i2(), &ComplexMatrix::identity(3), "dragomir", 1.0, 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn th2_examples() {
        for lambda in [0.01, 1.0, 100.0] {
            let res = bound_th2(&i2(), &i2(), 1.0, lambda).unwrap();
            assert_eq!(res.len(), 2);
            assert!(close(res[0].rhs_value, 1.0, 1e-12) && res[0].slack.abs() <= 1e-12);
            assert!(close(res[1].rhs_value, 1.0, 1e-12) && res[1].exponent_p == 1.0);
        }
        let res = bound_th2(&j(), &j(), 1.0, 1.0).unwrap();
        assert!(close(res[0].rhs_value, 1.0, 1e-12) && close(res[0].w_power_value, 1.0, 1e-12));
        assert!(bound_th2(&i2(), &i2(), 1.0, 0.0).is_err());
    }

    #[test]
    fn th3_examples() {
        let res = bound_th3(&i2(), 0.5, 2.0).unwrap();
        assert!(close(res[0].rhs_value, 1.0, 1e-12));
        let res = bound_th3(&j(), 0.5, 0.5).unwrap();
        assert!(close(res[0].rhs_value, 0.25, 1e-12) && close(res[0].w_power_value, 0.25, 1e-12));
        assert!(res[1].holds);
    }

    #[test]
    fn fourth_power_examples() {
        let r = bound_th4(&j(), 1e-9).unwrap();
        assert!(close(r.rhs_value, 1.0 / 16.0, 1e-9));
        assert!(close(bound_th4(&j(), 1.0).unwrap().rhs_value, 5.0 / 64.0, 1e-12));
        assert!(close(bound_th4(&i2(), 3.0).unwrap().rhs_value, 1.0, 1e-12));
        let r5 = bound_th5(&j(), 1.0).unwrap();
        assert!(close(r5[0].rhs_value, 1.0 / 16.0, 1e-12) && close(r5[0].w_power_value, 1.0 / 16.0, 1e-12));
        assert_eq!(r5[1].exponent_p, 2.0);
        assert!(close(bound_th5(&i2(), 0.3).unwrap()[0].rhs_value, 1.0, 1e-12));
        assert!(close(bound_th6(&j(), 1, 1.0).unwrap().rhs_value, 3.0 / 32.0, 1e-12));
        assert!(close(bound_th6(&i2(), 1, 1.0).unwrap().rhs_value, 1.0, 1e-12));
        let r6 = bound_th6(&j(), 2, 1.0).unwrap();
        assert!(r6.holds && r6.exponent_p == 8.0 && close(r6.w_power_value, 1.0 / 256.0, 1e-12));
        assert!(matches!(bound_th6(&j(), 16, 1.0), Err(Error::Overflow { .. })));
        assert!(close(bound_cor_bomi(&j(), 1.0).unwrap().rhs_value, 3.0 / 16.0, 1e-12));
    }

    #[test]
    fn coefficient_tables() {
        let half = BoundParams::default().with_lambda(0.5).with_alpha(0.5);
        let c: Vec<f64> = coefficients(BoundId::MixedSchwarzRefinement, &half)
            .unwrap()
            .iter()
            .map(|t| t.coefficient(0.5))
            .collect();
        assert!(close(c[0], 1.0 / 3.0, 1e-15) && close(c[1], 1.0 / 12.0, 1e-15) && close(c[2], 1.0 / 6.0, 1e-15));
        let c: Vec<f64> = coefficients(BoundId::BinomialFirstOrder, &BoundParams::default())
            .unwrap()
            .iter()
            .map(|t| t.coefficient(1.0))
            .collect();
        assert_eq!(c, vec![3.0 / 16.0, 5.0 / 16.0]);
    }
}
