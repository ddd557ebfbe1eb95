//! Driving systems, the additive `a`-cocycle over flag-bundle points, and
//! the finite-time exponents built from it.
//!
//! The central identification: iterating "multiply by the generator, take
//! the Iwasawa factorization, keep the orthogonal factor as the new flag
//! frame, accumulate the log diagonal" computes the `a`-cocycle `a(t, xi)`
//! of the flow without ever forming the full matrix product, so horizons
//! of 10^5 steps and spectral radii of 2 cause no overflow. This is the
//! classical QR method for Lyapunov spectra read as the Iwasawa cocycle.

use nalgebra::{DMatrix, DVector};

use crate::cartan::CartanVector;
use crate::error::Error;
use crate::flag::{flag_distance, FlagPoint};
use crate::lie::{positive_qr, GroupElement};
use crate::Result;

/// Base-flow shape. The state graph is always a single cycle (a point is
/// a cycle of length one), which keeps the base chain transitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrivingKind {
    Point,
    Cyclic,
    Automaton,
}

/// A finite deterministic base flow together with the time-one cocycle
/// increment at each state.
#[derive(Debug, Clone)]
pub struct DrivingSystem {
    kind: DrivingKind,
    generators: Vec<GroupElement>,
    /// `assign[s]` indexes the generator applied at state `s`.
    assign: Vec<usize>,
    /// `next[s]` is the successor state.
    next: Vec<usize>,
}

impl DrivingSystem {
    /// A single matrix iterated forever.
    pub fn point(g: GroupElement) -> Self {
        DrivingSystem {
            kind: DrivingKind::Point,
            generators: vec![g],
            assign: vec![0],
            next: vec![0],
        }
    }

    /// A periodic word `g_0, g_1, ..., g_{p-1}, g_0, ...`: state `s`
    /// applies `generators[word[s]]` and moves to `s + 1 mod p`.
    pub fn cyclic(generators: Vec<GroupElement>, word: Vec<usize>) -> Result<Self> {
        if generators.is_empty() || word.is_empty() {
            return Err(Error::invalid("DrivingSystem::cyclic", "empty word"));
        }
        Self::validate_generators(&generators)?;
        if word.iter().any(|&i| i >= generators.len()) {
            return Err(Error::invalid(
                "DrivingSystem::cyclic",
                "word index out of range",
            ));
        }
        let p = word.len();
        Ok(DrivingSystem {
            kind: if p == 1 {
                DrivingKind::Point
            } else {
                DrivingKind::Cyclic
            },
            generators,
            assign: word,
            next: (0..p).map(|s| (s + 1) % p).collect(),
        })
    }

    /// Arbitrary deterministic transition map, which must be a single
    /// cycle through all states.
    pub fn automaton(
        generators: Vec<GroupElement>,
        assign: Vec<usize>,
        next: Vec<usize>,
    ) -> Result<Self> {
        if assign.len() != next.len() || assign.is_empty() {
            return Err(Error::invalid(
                "DrivingSystem::automaton",
                "assign/next length mismatch or empty",
            ));
        }
        Self::validate_generators(&generators)?;
        if assign.iter().any(|&i| i >= generators.len()) {
            return Err(Error::invalid(
                "DrivingSystem::automaton",
                "generator index out of range",
            ));
        }
        let m = next.len();
        if next.iter().any(|&s| s >= m) {
            return Err(Error::invalid(
                "DrivingSystem::automaton",
                "next state out of range",
            ));
        }
        // The functional graph must be one cycle covering every state.
        let mut seen = vec![false; m];
        let mut s = 0usize;
        for _ in 0..m {
            if seen[s] {
                return Err(Error::invalid(
                    "DrivingSystem::automaton",
                    "state graph is not a single cycle",
                ));
            }
            seen[s] = true;
            s = next[s];
        }
        if s != 0 || !seen.iter().all(|&b| b) {
            return Err(Error::invalid(
                "DrivingSystem::automaton",
                "state graph is not a single cycle",
            ));
        }
        Ok(DrivingSystem {
            kind: DrivingKind::Automaton,
            generators,
            assign,
            next,
        })
    }

    fn validate_generators(generators: &[GroupElement]) -> Result<()> {
        let n = generators[0].dim();
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::invalid(
                "DrivingSystem",
                "generators of mixed dimension",
            ));
        }
        Ok(())
    }

    pub fn kind(&self) -> DrivingKind {
        self.kind
    }

    /// Matrix dimension `n`.
    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// Number of base states (the cycle length).
    pub fn period(&self) -> usize {
        self.next.len()
    }

    pub fn generator(&self, state: usize) -> &GroupElement {
        &self.generators[self.assign[state]]
    }

    pub fn step(&self, state: usize) -> usize {
        self.next[state]
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// The matrix of `rho(t, state)` by direct product (use only for
    /// small `t`; the cocycle routines below never need it).
    pub fn product(&self, state: usize, t: usize) -> Result<GroupElement> {
        let mut acc = GroupElement::identity(self.dim());
        let mut s = state;
        for step in 0..t {
            acc = self.generator(s).multiply(&acc);
            s = self.next[s];
            if !acc.entries().iter().all(|x| x.is_finite()) {
                return Err(Error::CocycleStep {
                    op: "product",
                    step,
                    reason: "overflow in direct product".into(),
                });
            }
        }
        Ok(acc)
    }
}

/// A point of the flag bundle `X x F`.
#[derive(Debug, Clone, PartialEq)]
pub struct BundlePoint {
    pub state: usize,
    pub flag: FlagPoint,
}

impl BundlePoint {
    pub fn new(state: usize, flag: FlagPoint) -> Self {
        BundlePoint { state, flag }
    }
}

/// The record of one cocycle run: running values `a(t, xi)` for
/// `t = 1..=horizon`, the parallel central accumulation, and the final
/// bundle point.
#[derive(Debug, Clone)]
pub struct CocycleTrace {
    pub horizon: usize,
    /// `a_partial[t-1] = a(t, xi)`.
    pub a_partial: Vec<CartanVector>,
    /// Central (scalar) accumulation, independent of the flag.
    pub central_partial: Vec<f64>,
    pub final_flag: FlagPoint,
    pub final_state: usize,
}

impl CocycleTrace {
    /// `a(horizon, xi)`.
    pub fn a_final(&self) -> &CartanVector {
        self.a_partial.last().expect("horizon >= 1")
    }

    pub fn final_point(&self) -> BundlePoint {
        BundlePoint::new(self.final_state, self.final_flag.clone())
    }
}

/// Runs the cocycle for `t` steps from `xi`, accumulating the Iwasawa
/// log-diagonal at each step.
pub fn evolve(d: &DrivingSystem, xi: &BundlePoint, t: usize) -> Result<CocycleTrace> {
    if t == 0 {
        return Err(Error::invalid("evolve", "horizon must be >= 1"));
    }
    if xi.flag.dim() != d.dim() {
        return Err(Error::RankMismatch {
            op: "evolve",
            expected: d.dim(),
            got: xi.flag.dim(),
        });
    }
    let n = d.dim();
    let mut frame = xi.flag.frame().clone();
    let mut state = xi.state;
    let mut running = vec![0.0_f64; n];
    let mut central = 0.0_f64;
    let mut a_partial = Vec::with_capacity(t);
    let mut central_partial = Vec::with_capacity(t);
    for step in 0..t {
        let g = d.generator(state);
        let moved = g.entries() * &frame;
        let (q, r) = positive_qr(&moved, "evolve").map_err(|e| Error::CocycleStep {
            op: "evolve",
            step,
            reason: e.to_string(),
        })?;
        for i in 0..n {
            running[i] += r[(i, i)].ln();
        }
        central += g.central_log();
        if running.iter().any(|x| !x.is_finite()) {
            return Err(Error::CocycleStep {
                op: "evolve",
                step,
                reason: "non-finite cocycle value".into(),
            });
        }
        a_partial.push(CartanVector::new(running.clone()));
        central_partial.push(central);
        frame = q;
        state = d.step(state);
    }
    let final_flag = FlagPoint::from_frame(frame)?;
    Ok(CocycleTrace {
        horizon: t,
        a_partial,
        central_partial,
        final_flag,
        final_state: state,
    })
}

/// `lambda_T(xi) = a(T, xi) / T`.
pub fn finite_time_lyapunov(d: &DrivingSystem, xi: &BundlePoint, t: usize) -> Result<CartanVector> {
    Ok(evolve(d, xi, t)?.a_final().scale(1.0 / t as f64))
}

/// Log-singular-value spread beyond which the incremental SVD declares
/// rank collapse.
const LOG_SPREAD_LIMIT: f64 = 300.0 * std::f64::consts::LN_10;

/// `(1/T) a+(rho(T, x0))`: sorted log singular values of the product,
/// maintained incrementally as `(U, log sigma, V)` with the scales kept
/// in log space so that only the relative spread ever enters a matrix.
pub fn polar_exponent(d: &DrivingSystem, x0: usize, t: usize) -> Result<CartanVector> {
    if t == 0 {
        return Err(Error::invalid("polar_exponent", "horizon must be >= 1"));
    }
    let n = d.dim();
    let mut u = DMatrix::<f64>::identity(n, n);
    let mut log_sigma = vec![0.0_f64; n];
    let mut state = x0;
    for step in 0..t {
        let g = d.generator(state);
        let top = log_sigma.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
        let spread = top - log_sigma.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        if spread > LOG_SPREAD_LIMIT {
            return Err(Error::RankCollapse {
                op: "polar_exponent",
                step,
                spread,
            });
        }
        // B = g * U * diag(exp(log sigma - top)); SVD(B) refreshes U and
        // folds the new singular values onto the running logs.
        let mut b = g.entries() * &u;
        for j in 0..n {
            let s = (log_sigma[j] - top).exp();
            for i in 0..n {
                b[(i, j)] *= s;
            }
        }
        let svd = nalgebra::linalg::SVD::try_new(b, true, false, f64::EPSILON, 0).ok_or(
            Error::CocycleStep {
                op: "polar_exponent",
                step,
                reason: "SVD did not converge".into(),
            },
        )?;
        u = svd.u.expect("u requested");
        let sigma: DVector<f64> = svd.singular_values;
        for i in 0..n {
            if sigma[i] <= 0.0 || !sigma[i].is_finite() {
                return Err(Error::CocycleStep {
                    op: "polar_exponent",
                    step,
                    reason: format!("singular value {}", sigma[i]),
                });
            }
            log_sigma[i] = sigma[i].ln() + top;
        }
        state = d.step(state);
    }
    let mut vals = log_sigma;
    vals.sort_by(|a, b| b.partial_cmp(a).expect("finite logs"));
    Ok(CartanVector::new(vals).scale(1.0 / t as f64))
}

/// `log |rho(T, x0) v| / |v|`, accumulated with per-step renormalization.
pub fn norm_cocycle(d: &DrivingSystem, x0: usize, v: &DVector<f64>, t: usize) -> Result<f64> {
    let norm0 = v.norm();
    if norm0 == 0.0 || !norm0.is_finite() {
        return Err(Error::invalid("norm_cocycle", "zero or non-finite vector"));
    }
    let mut cur = v / norm0;
    let mut total = 0.0_f64;
    let mut state = x0;
    for _ in 0..t {
        cur = d.generator(state).entries() * cur;
        let m = cur.norm();
        total += m.ln();
        cur /= m;
        state = d.step(state);
    }
    Ok(total)
}

/// Finite-horizon convergence certificate: the estimate `a(T)/T` and the
/// worst deviation of the running averages over the last `window` steps.
pub fn regularity_diagnostic(trace: &CocycleTrace, window: usize) -> (CartanVector, f64) {
    assert!(window >= 1, "window must be >= 1");
    assert!(
        trace.horizon >= 2 * window,
        "horizon must be at least twice the window"
    );
    let t = trace.horizon;
    let estimate = trace.a_final().scale(1.0 / t as f64);
    let mut gap = 0.0_f64;
    for s in (t - window)..t {
        let at = trace.a_partial[s - 1].scale(1.0 / s as f64);
        gap = gap.max(at.inf_distance(&estimate));
    }
    (estimate, gap)
}

/// Distance used for chain jumps: flag metric plus a discrete mismatch
/// penalty of 1 between distinct base states.
pub fn bundle_distance(a: &BundlePoint, b: &BundlePoint) -> f64 {
    let base = if a.state == b.state { 0.0 } else { 1.0 };
    flag_distance(&a.flag, &b.flag).max(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{act, coordinate_flag};
    use crate::lie::iwasawa_a;
    use crate::roots::WeylElement;
    use nalgebra::{dmatrix, dvector};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn diag_flow(h: &[f64]) -> DrivingSystem {
        DrivingSystem::point(GroupElement::from_diag_exp(&CartanVector::from(h)))
    }

    fn standard_point(n: usize) -> BundlePoint {
        BundlePoint::new(0, FlagPoint::standard(n))
    }

    #[test]
    fn diagonal_flow_on_attractor() {
        let d = diag_flow(&[1.0, 0.0, -1.0]);
        let tr = evolve(&d, &standard_point(3), 10).unwrap();
        assert!(tr.a_final().inf_distance(&CartanVector::from(vec![10.0, 0.0, -10.0])) < 1e-12);
        let ftle = finite_time_lyapunov(&d, &standard_point(3), 7).unwrap();
        assert!(ftle.inf_distance(&CartanVector::from(vec![1.0, 0.0, -1.0])) < 1e-12);
    }

    #[test]
    fn rotation_cocycle_vanishes() {
        let th = 0.61_f64;
        let rot = GroupElement::special(dmatrix![th.cos(), -th.sin(); th.sin(), th.cos()]).unwrap();
        let d = DrivingSystem::point(rot);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = DMatrix::from_fn(2, 2, |_, _| rng.random_range(-1.0..1.0));
        let b = BundlePoint::new(0, FlagPoint::from_spanning(&m).unwrap());
        let tr = evolve(&d, &b, 50).unwrap();
        assert!(tr.a_final().inf_norm() < 1e-12);
    }

    #[test]
    fn permuted_start_gives_permuted_exponent() {
        let d = diag_flow(&[1.0, 0.0, -1.0]);
        let w13 = WeylElement::transposition(3, 0, 2);
        let b = BundlePoint::new(0, coordinate_flag(&w13));
        let ftle = finite_time_lyapunov(&d, &b, 5).unwrap();
        assert!(ftle.inf_distance(&CartanVector::from(vec![-1.0, 0.0, 1.0])) < 1e-12);
    }

    fn normalize_sl(m: DMatrix<f64>) -> GroupElement {
        let det: f64 = m.determinant();
        assert!(det.abs() > 1e-6, "test matrix too close to singular");
        let mut s = &m * det.abs().powf(-1.0 / (m.nrows() as f64));
        if det < 0.0 {
            let last = m.ncols() - 1;
            for i in 0..m.nrows() {
                s[(i, last)] = -s[(i, last)];
            }
        }
        GroupElement::special(s).unwrap()
    }

    #[test]
    fn two_step_word_matches_direct_product() {
        let g1 = normalize_sl(dmatrix![1.2, 0.3, 0.0; 0.0, 1.0, -0.4; 0.1, 0.0, 0.86]);
        let g2 = normalize_sl(dmatrix![0.9, -0.2, 0.1; 0.3, 1.1, 0.0; 0.0, 0.2, 1.0]);
        let d = DrivingSystem::cyclic(vec![g1.clone(), g2.clone()], vec![0, 1]).unwrap();
        let b0 = standard_point(3);
        let tr = evolve(&d, &b0, 2).unwrap();
        // a(2, xi) = a(g2 k1) + a(g1) where k1 is the flag after step 1.
        let k1 = evolve(&d, &b0, 1).unwrap().final_flag;
        let direct = &iwasawa_a(&GroupElement::from_orthogonal(
            g2.entries() * k1.frame(),
        ))
        .unwrap()
            + &iwasawa_a(&g1).unwrap();
        assert!(tr.a_final().inf_distance(&direct) < 1e-10);
    }

    #[test]
    fn cocycle_identity_random_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let mats: Vec<GroupElement> = (0..3)
                .map(|_| {
                    let m = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.5..1.5));
                    if m.determinant().abs() < 1e-3 {
                        GroupElement::identity(3)
                    } else {
                        normalize_sl(m)
                    }
                })
                .collect();
            let d = DrivingSystem::cyclic(mats, vec![0, 1, 2]).unwrap();
            let m = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
            let xi = BundlePoint::new(0, FlagPoint::from_spanning(&m).unwrap());
            let t = rng.random_range(2..20usize);
            let s = rng.random_range(1..t);
            let full = evolve(&d, &xi, t).unwrap();
            let first = evolve(&d, &xi, s).unwrap();
            let second = evolve(&d, &first.final_point(), t - s).unwrap();
            let sum = &first.a_final().clone() + second.a_final();
            assert!(full.a_final().inf_distance(&sum) < 1e-10);
        }
    }

    #[test]
    fn overflow_free_long_horizon() {
        // Spectral radius 2 for 10^5 steps: the running sum reaches
        // ~7 * 10^4 but nothing is ever exponentiated.
        let d = diag_flow(&[2.0_f64.ln(), 0.0, -(2.0_f64.ln())]);
        let tr = evolve(&d, &standard_point(3), 100_000).unwrap();
        assert!(tr.a_final().coord(0) > 69_000.0);
        assert!(tr.a_final().is_finite());
    }

    #[test]
    fn final_flag_matches_direct_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.5..1.5));
        let g = normalize_sl(m);
        let d = DrivingSystem::point(g.clone());
        let b = BundlePoint::new(0, FlagPoint::standard(3));
        let t = 40;
        let tr = evolve(&d, &b, t).unwrap();
        let direct = act(&d.product(0, t).unwrap(), &b.flag).unwrap();
        assert!(flag_distance(&tr.final_flag, &direct) < 1e-8);
    }

    #[test]
    fn polar_exponent_examples() {
        let d = diag_flow(&[1.0, 0.0, -1.0]);
        let pe = polar_exponent(&d, 0, 37).unwrap();
        assert!(pe.inf_distance(&CartanVector::from(vec![1.0, 0.0, -1.0])) < 1e-12);

        let th = 0.9_f64;
        let rot = GroupElement::special(dmatrix![th.cos(), -th.sin(); th.sin(), th.cos()]).unwrap();
        let pe = polar_exponent(&DrivingSystem::point(rot), 0, 25).unwrap();
        assert!(pe.inf_norm() < 1e-12);

        // Unipotent: log singular values grow like log t, so the
        // exponent decays to zero.
        let shear = GroupElement::special(dmatrix![1.0, 1.0; 0.0, 1.0]).unwrap();
        let pe = polar_exponent(&DrivingSystem::point(shear), 0, 1000).unwrap();
        assert!(pe.inf_norm() <= 0.01);
    }

    #[test]
    fn polar_exponent_matches_direct_svd() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..10 {
            let m = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.5..1.5));
            if m.determinant().abs() < 1e-2 {
                continue;
            }
            let g = normalize_sl(m);
            let d = DrivingSystem::point(g.clone());
            let t = 30;
            let inc = polar_exponent(&d, 0, t).unwrap();
            let direct = crate::lie::polar_a(&d.product(0, t).unwrap()).unwrap();
            assert!(inc.inf_distance(&direct.scale(1.0 / t as f64)) < 1e-9);
        }
    }

    #[test]
    fn polar_majorizes_iwasawa() {
        // Partial sums of the sorted singular logs dominate those of any
        // flag's Iwasawa diagonal at the same horizon.
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10 {
            let m = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.5..1.5));
            if m.determinant().abs() < 1e-2 {
                continue;
            }
            let d = DrivingSystem::point(normalize_sl(m));
            let f = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
            let xi = BundlePoint::new(0, FlagPoint::from_spanning(&f).unwrap());
            let t = 12;
            let polar = polar_exponent(&d, 0, t).unwrap().scale(t as f64);
            let iwa = evolve(&d, &xi, t).unwrap().a_final().sorted_decreasing();
            for k in 1..=3 {
                assert!(polar.partial_sum(k) >= iwa.partial_sum(k) - 1e-9);
            }
        }
    }

    #[test]
    fn norm_cocycle_examples() {
        let d = diag_flow(&[1.0, 0.0, -1.0]);
        let t = 13;
        let up = norm_cocycle(&d, 0, &dvector![1.0, 0.0, 0.0], t).unwrap();
        assert!((up - t as f64).abs() < 1e-12);
        let down = norm_cocycle(&d, 0, &dvector![0.0, 0.0, 1.0], t).unwrap();
        assert!((down + t as f64).abs() < 1e-12);
    }

    #[test]
    fn norm_cocycle_is_lambda1_of_a() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10 {
            let m = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.5..1.5));
            if m.determinant().abs() < 1e-2 {
                continue;
            }
            let d = DrivingSystem::point(normalize_sl(m));
            let f = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
            let flag = FlagPoint::from_spanning(&f).unwrap();
            let v = flag.frame().column(0).into_owned();
            let t = 60;
            let nc = norm_cocycle(&d, 0, &v, t).unwrap();
            let a = evolve(&d, &BundlePoint::new(0, flag), t).unwrap();
            assert!((nc - a.a_final().coord(0)).abs() < 1e-9);
        }
    }

    #[test]
    fn central_component_ignores_flag() {
        let g = GroupElement::from_general(dmatrix![3.0, 1.0, 0.0; 0.0, 2.0, 0.5; 0.2, 0.0, 1.0])
            .unwrap();
        let d = DrivingSystem::point(g);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f1 = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
        let f2 = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
        let t1 = evolve(&d, &BundlePoint::new(0, FlagPoint::from_spanning(&f1).unwrap()), 20)
            .unwrap();
        let t2 = evolve(&d, &BundlePoint::new(0, FlagPoint::from_spanning(&f2).unwrap()), 20)
            .unwrap();
        assert_eq!(t1.central_partial, t2.central_partial);
        assert!(t1.central_partial[19] != 0.0);
    }

    #[test]
    fn regularity_diagnostic_cases() {
        let d = diag_flow(&[1.0, 0.0, -1.0]);
        let tr = evolve(&d, &standard_point(3), 200).unwrap();
        let (est, gap) = regularity_diagnostic(&tr, 50);
        assert!(est.inf_distance(&CartanVector::from(vec![1.0, 0.0, -1.0])) < 1e-12);
        assert_eq!(gap, 0.0);

        // Distinct eigenvalue moduli, generic flag: geometric convergence.
        let g = GroupElement::special(dmatrix![2.0, 1.0; 0.0, 0.5]).unwrap();
        let d = DrivingSystem::point(g);
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let f = DMatrix::from_fn(2, 2, |_, _| rng.random_range(-1.0..1.0));
        let tr = evolve(&d, &BundlePoint::new(0, FlagPoint::from_spanning(&f).unwrap()), 500)
            .unwrap();
        let (_, gap) = regularity_diagnostic(&tr, 100);
        assert!(gap <= 1e-3);

        // Elliptic: estimate near zero, gap O(1/T).
        let th = 2.0_f64.sqrt();
        let rot = GroupElement::special(dmatrix![th.cos(), -th.sin(); th.sin(), th.cos()]).unwrap();
        let tr = evolve(&DrivingSystem::point(rot), &standard_point(2), 400).unwrap();
        let (est, gap) = regularity_diagnostic(&tr, 100);
        assert!(est.inf_norm() < 1e-10);
        assert!(gap < 0.1);
    }

    #[test]
    fn automaton_validation() {
        let g = GroupElement::identity(2);
        assert!(DrivingSystem::automaton(vec![g.clone()], vec![0, 0], vec![1, 0]).is_ok());
        // Two 1-cycles: rejected.
        assert!(DrivingSystem::automaton(vec![g.clone()], vec![0, 0], vec![0, 1]).is_err());
        // Not covering all states.
        assert!(DrivingSystem::automaton(vec![g], vec![0, 0, 0], vec![1, 0, 0]).is_err());
    }
}
