//! Root systems of types A and C, the Weyl group and its action on the
//! Cartan subspace, chamber location, Theta-subsets and their stabilizer
//! subgroups, cone membership, and the lambda_k functionals.

use std::collections::BTreeSet;
use std::fmt;

use crate::cartan::CartanVector;
use crate::error::Error;
use crate::Result;

/// Root-system family. Type A covers `Sl(n)`; type C is used for the
/// rank-2 symplectic chamber geometry only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A,
    C,
}

/// A positive root stored as an integer coefficient vector: the
/// functional `H -> sum_i coeffs[i] * H_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    fn new(coeffs: Vec<i32>) -> Self {
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn eval(&self, h: &CartanVector) -> f64 {
        self.coeffs
            .iter()
            .zip(h.coords())
            .map(|(&c, &x)| c as f64 * x)
            .sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                write!(f, "+")?;
            }
            match c {
                1 => write!(f, "e{}", i + 1)?,
                -1 => write!(f, "-e{}", i + 1)?,
                _ => write!(f, "{}e{}", c, i + 1)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// A (signed) permutation acting on CartanVectors. `perm[j]` is the image
/// of slot `j`; the action moves coordinate `j` to slot `perm[j]` with a
/// sign, so `(w H)[perm[j]] = signs[j] * H[j]`. Type A elements have all
/// signs `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Unsigned permutation: `perm[j]` is the 0-based image of `j`.
    pub fn from_perm(perm: Vec<usize>) -> Self {
        let n = perm.len();
        debug_assert!(is_permutation(&perm));
        WeylElement {
            perm,
            signs: vec![1; n],
        }
    }

    pub fn from_signed(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        debug_assert!(is_permutation(&perm));
        debug_assert_eq!(perm.len(), signs.len());
        debug_assert!(signs.iter().all(|&s| s == 1 || s == -1));
        WeylElement { perm, signs }
    }

    /// The transposition of slots `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        WeylElement {
            perm,
            signs: vec![1; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `self` after `rhs`: `(self * rhs)(H) = self(rhs(H))`.
    pub fn compose(&self, rhs: &WeylElement) -> WeylElement {
        let n = self.rank();
        debug_assert_eq!(n, rhs.rank());
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for j in 0..n {
            perm[j] = self.perm[rhs.perm[j]];
            signs[j] = self.signs[rhs.perm[j]] * rhs.signs[j];
        }
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        WeylElement { perm, signs }
    }

    /// Key realizing the fixed enumeration order (perm lexicographic,
    /// then sign pattern with `+1` first).
    pub fn enumeration_key(&self) -> (Vec<usize>, u64) {
        let mut mask = 0u64;
        for (i, &s) in self.signs.iter().enumerate() {
            if s < 0 {
                mask |= 1 << i;
            }
        }
        (self.perm.clone(), mask)
    }

    /// One-line name: images of 1..n, with a sign suffix for type C
    /// elements, e.g. `231` or `2+1-`.
    pub fn name(&self) -> String {
        let signed = self.signs.iter().any(|&s| s < 0);
        let mut s = String::new();
        for j in 0..self.rank() {
            s.push_str(&(self.perm[j] + 1).to_string());
            if signed {
                s.push(if self.signs[j] > 0 { '+' } else { '-' });
            }
        }
        s
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut seen = vec![false; n];
    perm.iter().all(|&p| {
        if p < n && !seen[p] {
            seen[p] = true;
            true
        } else {
            false
        }
    })
}

/// A subset of simple roots, stored as 0-based indices into the simple
/// root list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThetaSubset {
    members: BTreeSet<usize>,
}

impl ThetaSubset {
    pub fn empty() -> Self {
        ThetaSubset {
            members: BTreeSet::new(),
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        ThetaSubset {
            members: indices.into_iter().collect(),
        }
    }

    pub fn full(rank: usize) -> Self {
        ThetaSubset {
            members: (0..rank).collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &ThetaSubset) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Display for ThetaSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Root-system data for one family and rank, with the simple-root
/// expansion of every positive root precomputed.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    ambient: usize,
    positive_roots: Vec<Root>,
    simple: Vec<usize>,
    /// For each positive root, the set of simple roots in its expansion.
    support: Vec<BTreeSet<usize>>,
}

impl RootSystem {
    /// Type `A_{n-1}` acting on length-`n` zero-sum vectors.
    pub fn type_a(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("RootSystem::type_a", "need n >= 2"));
        }
        let mut positive = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut c = vec![0; n];
                c[i] = 1;
                c[j] = -1;
                positive.push(Root::new(c));
            }
        }
        let simple: Vec<usize> = (0..n)
            .flat_map(|i| {
                positive
                    .iter()
                    .position(|r| is_simple_a(r, i, n))
                    .into_iter()
            })
            .collect();
        Self::finish(Family::A, n, positive, simple)
    }

    /// Type `C_n` acting on length-`n` vectors `(l1, .., ln)`.
    pub fn type_c(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("RootSystem::type_c", "need n >= 2"));
        }
        let mut positive = Vec::new();
        let mut simple = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut c = vec![0; n];
                c[i] = 1;
                c[j] = -1;
                if j == i + 1 {
                    simple.push(positive.len());
                }
                positive.push(Root::new(c));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut c = vec![0; n];
                c[i] = 1;
                c[j] = 1;
                positive.push(Root::new(c));
            }
        }
        for i in 0..n {
            let mut c = vec![0; n];
            c[i] = 2;
            if i == n - 1 {
                simple.push(positive.len());
            }
            positive.push(Root::new(c));
        }
        // Reorder the simple list to follow the Dynkin labeling
        // a_1 .. a_{n-1}, then the long root a_n = 2e_n.
        simple.sort_by_key(|&idx| {
            let c = &positive[idx].coeffs;
            if c.iter().any(|&x| x == 2) {
                n
            } else {
                c.iter().position(|&x| x == 1).unwrap()
            }
        });
        Self::finish(Family::C, n, positive, simple)
    }

    fn finish(
        family: Family,
        ambient: usize,
        positive_roots: Vec<Root>,
        simple: Vec<usize>,
    ) -> Result<Self> {
        let support = expansion_supports(&positive_roots, &simple)?;
        Ok(RootSystem {
            family,
            ambient,
            positive_roots,
            simple,
            support,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Ambient coordinate dimension (`n` for both `A_{n-1}` and `C_n`).
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[self.simple[i]]
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.simple.iter().map(|&i| &self.positive_roots[i])
    }

    /// Order of the full Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.ambient as u128;
        let fact: u128 = (1..=n).product();
        match self.family {
            Family::A => fact,
            Family::C => fact << self.ambient,
        }
    }

    /// The principal involution `w0` (takes the simple system to its
    /// negative): coordinate reversal for type A, global negation for C.
    pub fn principal_involution(&self) -> WeylElement {
        let n = self.ambient;
        match self.family {
            Family::A => WeylElement::from_perm((0..n).rev().collect()),
            Family::C => WeylElement::from_signed((0..n).collect(), vec![-1; n]),
        }
    }

    /// Membership of `H` in the closed positive chamber, up to `tol`.
    pub fn in_closed_chamber(&self, h: &CartanVector, tol: f64) -> bool {
        self.positive_roots.iter().all(|r| r.eval(h) >= -tol)
    }

    /// Whether positive root `idx` lies in the span of the simple roots
    /// indexed by `theta`.
    pub fn root_in_span(&self, idx: usize, theta: &ThetaSubset) -> bool {
        self.support[idx].iter().all(|&s| theta.contains(s))
    }
}

fn is_simple_a(r: &Root, i: usize, n: usize) -> bool {
    i + 1 < n && r.coeffs[i] == 1 && r.coeffs[i + 1] == -1 && r.coeffs.iter().map(|c| c.abs()).sum::<i32>() == 2
}

/// Expands each positive root over the simple roots (by small exact
/// Gaussian elimination) and records the support.
fn expansion_supports(positive: &[Root], simple: &[usize]) -> Result<Vec<BTreeSet<usize>>> {
    let k = simple.len();
    let n = positive.first().map(|r| r.coeffs.len()).unwrap_or(0);
    let mut out = Vec::with_capacity(positive.len());
    for root in positive {
        // Solve sum_j c_j * simple_j = root by least squares and round;
        // coefficients of crystallographic roots are small integers.
        let mut a = nalgebra::DMatrix::<f64>::zeros(n, k);
        for (j, &sidx) in simple.iter().enumerate() {
            for i in 0..n {
                a[(i, j)] = positive[sidx].coeffs[i] as f64;
            }
        }
        let b = nalgebra::DVector::<f64>::from_iterator(n, root.coeffs.iter().map(|&c| c as f64));
        let svd = nalgebra::linalg::SVD::try_new(a, true, true, f64::EPSILON, 0)
            .ok_or_else(|| Error::decomposition("root expansion", "SVD failed"))?;
        let c = svd
            .solve(&b, 1e-10)
            .map_err(|e| Error::decomposition("root expansion", e))?;
        let mut support = BTreeSet::new();
        for (j, &cj) in c.iter().enumerate() {
            let r = cj.round();
            if (cj - r).abs() > 1e-8 {
                return Err(Error::decomposition(
                    "root expansion",
                    format!("non-integer coefficient {cj}"),
                ));
            }
            if r != 0.0 {
                support.insert(j);
            }
        }
        out.push(support);
    }
    Ok(out)
}

/// Enumeration limit for the Weyl group.
const WEYL_LIMIT: u128 = 1_000_000;

/// All Weyl elements in a fixed order: permutations lexicographically
/// (identity first), and for type C each permutation carries all sign
/// patterns in ascending mask order (`+1` bits first).
pub fn enumerate_weyl(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    let order = rs.weyl_order();
    if order > WEYL_LIMIT {
        return Err(Error::GroupTooLarge {
            order,
            limit: WEYL_LIMIT,
        });
    }
    let n = rs.ambient_dim();
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    let mut out = Vec::with_capacity(order as usize);
    match rs.family() {
        Family::A => {
            for p in perms {
                out.push(WeylElement::from_perm(p));
            }
        }
        Family::C => {
            for p in perms {
                for mask in 0u64..(1 << n) {
                    let signs: Vec<i8> = (0..n)
                        .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                        .collect();
                    out.push(WeylElement::from_signed(p.clone(), signs));
                }
            }
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Applies `w` to `H`.
pub fn weyl_act(w: &WeylElement, h: &CartanVector) -> Result<CartanVector> {
    if w.rank() != h.dim() {
        return Err(Error::RankMismatch {
            op: "weyl_act",
            expected: w.rank(),
            got: h.dim(),
        });
    }
    let mut out = vec![0.0; h.dim()];
    for j in 0..h.dim() {
        out[w.perm()[j]] = w.signs()[j] as f64 * h.coord(j);
    }
    Ok(CartanVector::new(out))
}

/// Applies `w` to a root functional: `(w a)(H) = a(w^{-1} H)`, realized
/// on coefficient vectors by the same signed permutation.
pub fn weyl_act_root(w: &WeylElement, r: &Root) -> Root {
    let n = w.rank();
    let mut out = vec![0i32; n];
    for j in 0..n {
        out[w.perm()[j]] = w.signs()[j] as i32 * r.coeffs()[j];
    }
    Root::new(out)
}

/// Locates the chamber of `H`: the first `w` in enumeration order with
/// `w^{-1} H` in the closed positive chamber, plus the set of simple
/// roots vanishing on `w^{-1} H` within `tol`.
pub fn chamber_locate(
    rs: &RootSystem,
    h: &CartanVector,
    tol: f64,
) -> Result<(WeylElement, ThetaSubset)> {
    for w in enumerate_weyl(rs)? {
        let moved = weyl_act(&w.inverse(), h)?;
        if rs.in_closed_chamber(&moved, tol) {
            let walls = vanishing_simple_roots(rs, &moved, tol);
            return Ok((w, walls));
        }
    }
    // Unreachable: the Weyl orbit of any vector meets the closed chamber.
    Err(Error::invalid("chamber_locate", "no chamber found"))
}

fn vanishing_simple_roots(rs: &RootSystem, h: &CartanVector, tol: f64) -> ThetaSubset {
    ThetaSubset::from_indices(
        (0..rs.rank()).filter(|&i| rs.simple_root(i).eval(h).abs() <= tol),
    )
}

/// `Theta_H`: the simple roots vanishing on `H`, which must already lie
/// in the closed positive chamber.
pub fn theta_of(rs: &RootSystem, h: &CartanVector, tol: f64) -> Result<ThetaSubset> {
    if !rs.in_closed_chamber(h, tol) {
        return Err(Error::invalid(
            "theta_of",
            format!("{:?} is not in the closed positive chamber", h.coords()),
        ));
    }
    Ok(vanishing_simple_roots(rs, h, tol))
}

/// The reflection generated by simple root `i`.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> WeylElement {
    let n = rs.ambient_dim();
    let c = rs.simple_root(i).coeffs();
    if let Some(pos) = c.iter().position(|&x| x == 2) {
        // Long root 2e_i of type C: sign flip.
        let mut signs = vec![1i8; n];
        signs[pos] = -1;
        WeylElement::from_signed((0..n).collect(), signs)
    } else {
        let a = c.iter().position(|&x| x == 1).unwrap();
        let b = c.iter().position(|&x| x == -1).unwrap();
        WeylElement::transposition(n, a, b)
    }
}

/// The stabilizer subgroup `W_Theta` generated by the reflections in the
/// simple roots of `theta`, sorted in enumeration order.
pub fn stabilizer_subgroup(rs: &RootSystem, theta: &ThetaSubset) -> Vec<WeylElement> {
    let n = rs.ambient_dim();
    let gens: Vec<WeylElement> = theta.iter().map(|i| simple_reflection(rs, i)).collect();
    let mut found: Vec<WeylElement> = vec![WeylElement::identity(n)];
    let mut frontier = found.clone();
    while let Some(w) = frontier.pop() {
        for g in &gens {
            let next = g.compose(&w);
            if !found.contains(&next) {
                found.push(next.clone());
                frontier.push(next);
            }
        }
    }
    found.sort_by_key(|w| w.enumeration_key());
    found
}

/// Whether `W_Theta w1 = W_Theta w2`, i.e. `w1 w2^{-1}` lies in `W_Theta`.
pub fn coset_equal(
    rs: &RootSystem,
    theta: &ThetaSubset,
    w1: &WeylElement,
    w2: &WeylElement,
) -> bool {
    let q = w1.compose(&w2.inverse());
    stabilizer_subgroup(rs, theta).contains(&q)
}

/// The minimal element of `W_Theta w` in enumeration order — the
/// canonical label of the coset.
pub fn coset_representative(
    rs: &RootSystem,
    theta: &ThetaSubset,
    w: &WeylElement,
) -> WeylElement {
    stabilizer_subgroup(rs, theta)
        .iter()
        .map(|s| s.compose(w))
        .min_by_key(|e| e.enumeration_key())
        .expect("stabilizer contains the identity")
}

/// Membership of `H` in the open cone `int(W_Theta cl a+)`: every
/// positive root outside the span of `theta` must exceed `strict_margin`.
pub fn cone_contains(
    rs: &RootSystem,
    theta: &ThetaSubset,
    h: &CartanVector,
    strict_margin: f64,
) -> bool {
    rs.positive_roots()
        .iter()
        .enumerate()
        .all(|(idx, r)| rs.root_in_span(idx, theta) || r.eval(h) > strict_margin)
}

/// Smallest value over the roots outside `<theta>`; `None` when every
/// positive root lies in the span (`theta` full).
pub fn cone_margin(rs: &RootSystem, theta: &ThetaSubset, h: &CartanVector) -> Option<f64> {
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|(idx, _)| !rs.root_in_span(*idx, theta))
        .map(|(_, r)| r.eval(h))
        .fold(None, |m, v| Some(m.map_or(v, |m: f64| m.min(v))))
}

/// `lambda_k(H) = H_1 + ... + H_k` (1-indexed `k`).
pub fn lambda_k(h: &CartanVector, k: usize) -> Result<f64> {
    if k == 0 || k > h.dim() {
        return Err(Error::invalid(
            "lambda_k",
            format!("k = {k} out of range 1..={}", h.dim()),
        ));
    }
    Ok(h.partial_sum(k))
}

/// The dual subset `Theta* = -(w0) Theta` on simple roots.
pub fn dual_theta(rs: &RootSystem, theta: &ThetaSubset) -> ThetaSubset {
    let w0 = rs.principal_involution();
    let mut out = BTreeSet::new();
    for i in theta.iter() {
        let moved = weyl_act_root(&w0, rs.simple_root(i));
        let negated = Root::new(moved.coeffs().iter().map(|&c| -c).collect());
        let j = (0..rs.rank())
            .find(|&j| rs.simple_root(j) == &negated)
            .expect("-w0 permutes the simple roots");
        out.insert(j);
    }
    ThetaSubset {
        members: out,
    }
}

/// Number of positive roots sent to negative roots — the Coxeter length.
pub fn length(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.positive_roots()
        .iter()
        .filter(|r| {
            let moved = weyl_act_root(w, r);
            // Negative iff the first nonzero coefficient is negative.
            moved
                .coeffs()
                .iter()
                .find(|&&c| c != 0)
                .map(|&c| c < 0)
                .unwrap_or(false)
        })
        .count()
}
