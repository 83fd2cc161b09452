//! Arithmetic matroids as dense rank and multiplicity tables indexed by subset bitmask.
//!
//! Every verifier is exhaustive. The molecule scan visits all nested pairs `X ⊆ Y`, which
//! is `3^k` pairs, and each molecule costs a further `2^|Y \ X|` to evaluate, so verifying
//! the positivity axioms is only practical for ground sets of a dozen or so elements.
//! Building the tables is capped at [`DEFAULT_GROUND_SET_CAP`] elements unless a larger cap
//! is requested.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arrangement::EllipticArrangement;
use crate::error::{Error, Result};
use crate::json;
use crate::poly::{BiPoly, Poly};
use crate::subset::{Subset, MAX_GROUND_SET};

pub const DEFAULT_GROUND_SET_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticMatroid {
    k: usize,
    rk: Vec<u32>,
    m: Vec<BigInt>,
}

/// An interval `[X, Y]` with `Y = X ⊔ F ⊔ T` on which the rank grows exactly along `F`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Molecule {
    pub x: Subset,
    pub y: Subset,
    pub f: Subset,
    pub t: Subset,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    R1,
    R2,
    R3,
    A1,
    A2,
    P,
    P1,
    P2,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::R1 => "r1",
            Axiom::R2 => "r2",
            Axiom::R3 => "r3",
            Axiom::A1 => "a1",
            Axiom::A2 => "a2",
            Axiom::P => "p",
            Axiom::P1 => "p1",
            Axiom::P2 => "p2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    #[serde(serialize_with = "json::subsets")]
    pub subsets: Vec<Subset>,
    pub detail: String,
}

/// Outcome of one exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub name: &'static str,
    /// Number of instances (pairs, molecules, ...) examined.
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn new(name: &'static str) -> Self {
        AxiomReport { name, checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Results of the positivity checks together with the consistency of `P <=> A2 ∧ P1 ∧ P2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub p: AxiomReport,
    pub a2: AxiomReport,
    pub p1: AxiomReport,
    pub p2: AxiomReport,
    pub equivalence_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdWitness {
    #[serde(serialize_with = "json::subset")]
    pub subset: Subset,
    #[serde(serialize_with = "json::bigint")]
    pub multiplicity: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub gcd: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCheck {
    pub holds: bool,
    pub witness: Option<GcdWitness>,
}

impl ArithmeticMatroid {
    /// Wraps raw tables indexed by subset bitmask. Rank axioms are not enforced here; use
    /// [`ArithmeticMatroid::verify_matroid`].
    pub fn from_tables(k: usize, rk: Vec<u32>, m: Vec<BigInt>) -> Result<Self> {
        if k > MAX_GROUND_SET.min(30) {
            return Err(Error::GroundSetTooLarge { size: k, cap: 30 });
        }
        let size = 1usize << k;
        if rk.len() != size || m.len() != size {
            return Err(Error::ShapeMismatch(format!(
                "tables of length {} and {} for a ground set of size {k}",
                rk.len(),
                m.len()
            )));
        }
        if let Some(bad) = m.iter().position(|v| !v.is_positive()) {
            return Err(Error::NonPositiveMultiplicity(bad as u64));
        }
        Ok(ArithmeticMatroid { k, rk, m })
    }

    pub fn from_arrangement(arr: &EllipticArrangement) -> Result<Self> {
        Self::from_arrangement_with_cap(arr, DEFAULT_GROUND_SET_CAP)
    }

    pub fn from_arrangement_with_cap(arr: &EllipticArrangement, cap: usize) -> Result<Self> {
        let k = arr.k();
        if k > cap {
            return Err(Error::GroundSetTooLarge { size: k, cap });
        }
        let mut rk = Vec::with_capacity(1 << k);
        let mut m = Vec::with_capacity(1 << k);
        for report in arr.all_reports()? {
            rk.push(report.rank as u32);
            m.push(report.multiplicity);
        }
        Self::from_tables(k, rk, m)
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.k)
    }

    pub fn rank(&self, s: Subset) -> u32 {
        self.rk[s.bits() as usize]
    }

    pub fn multiplicity(&self, s: Subset) -> &BigInt {
        &self.m[s.bits() as usize]
    }

    pub fn rank_table(&self) -> &[u32] {
        &self.rk
    }

    pub fn multiplicity_table(&self) -> &[BigInt] {
        &self.m
    }

    /// `rk(E)`.
    pub fn full_rank(&self) -> u32 {
        self.rank(self.ground_set())
    }

    fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..1u64 << self.k).map(Subset)
    }

    /// Rank axioms: normalization, unit increase, and submodularity. Submodularity is
    /// checked in its local form `rk(S+i) + rk(S+j) >= rk(S+i+j) + rk(S)`, which is
    /// equivalent to the global inequality for set functions on a Boolean lattice.
    pub fn verify_matroid(&self) -> AxiomReport {
        let mut report = AxiomReport::new("rank");
        report.checked += 1;
        if self.rank(Subset::EMPTY) != 0 {
            report.violations.push(Violation {
                axiom: Axiom::R1,
                subsets: vec![Subset::EMPTY],
                detail: format!("rk({{}}) = {}", self.rank(Subset::EMPTY)),
            });
        }
        for s in self.subsets() {
            let r = self.rank(s);
            for i in 0..self.k {
                if s.contains(i) {
                    continue;
                }
                let si = s.with(i);
                let ri = self.rank(si);
                report.checked += 1;
                if ri < r || ri > r + 1 {
                    report.violations.push(Violation {
                        axiom: Axiom::R2,
                        subsets: vec![s, si],
                        detail: format!("rk({s}) = {r} but rk({si}) = {ri}"),
                    });
                }
                for j in i + 1..self.k {
                    if s.contains(j) {
                        continue;
                    }
                    let sj = s.with(j);
                    let sij = si.with(j);
                    report.checked += 1;
                    if ri + self.rank(sj) < self.rank(sij) + r {
                        report.violations.push(Violation {
                            axiom: Axiom::R3,
                            subsets: vec![si, sj],
                            detail: format!(
                                "rk({si}) + rk({sj}) = {} < rk({sij}) + rk({s}) = {}",
                                ri + self.rank(sj),
                                self.rank(sij) + r
                            ),
                        });
                    }
                }
            }
        }
        report
    }

    /// Divisibility along single-element extensions.
    pub fn verify_a1(&self) -> AxiomReport {
        let mut report = AxiomReport::new("a1");
        for s in self.subsets() {
            for i in (0..self.k).filter(|&i| !s.contains(i)) {
                let si = s.with(i);
                let (ms, msi) = (self.multiplicity(s), self.multiplicity(si));
                report.checked += 1;
                let ok = if self.rank(si) == self.rank(s) {
                    ms.is_multiple_of(msi)
                } else {
                    msi.is_multiple_of(ms)
                };
                if !ok {
                    report.violations.push(Violation {
                        axiom: Axiom::A1,
                        subsets: vec![s, si],
                        detail: format!("m({s}) = {ms}, m({si}) = {msi}"),
                    });
                }
            }
        }
        report
    }

    /// The molecule structure of `[x, y]`, if any. The split is forced: `T` collects the
    /// elements of `y \ x` that do not raise the rank of `x`.
    pub fn find_molecule(&self, x: Subset, y: Subset) -> Result<Option<Molecule>> {
        if !x.is_subset_of(y) {
            return Err(Error::NotNested { lower: x.bits(), upper: y.bits() });
        }
        self.ground_set_check(y)?;
        Ok(self.molecule_unchecked(x, y))
    }

    fn ground_set_check(&self, s: Subset) -> Result<()> {
        s.check_within(self.k)
    }

    fn molecule_unchecked(&self, x: Subset, y: Subset) -> Option<Molecule> {
        let rx = self.rank(x);
        let free = y.difference(x);
        let t = Subset::from_indices(free.indices().filter(|&i| self.rank(x.with(i)) == rx));
        let f = free.difference(t);
        // quick rejection before the full interval scan
        if self.rank(y) as usize != rx as usize + f.len() {
            return None;
        }
        let ok = free
            .submasks()
            .all(|d| self.rank(x.union(d)) as usize == rx as usize + d.intersection(f).len());
        ok.then_some(Molecule { x, y, f, t })
    }

    /// Calls `visit` on every molecule, scanning all nested pairs.
    pub fn for_each_molecule(&self, mut visit: impl FnMut(&Molecule)) {
        for y in self.subsets() {
            for x in y.submasks() {
                if let Some(mol) = self.molecule_unchecked(x, y) {
                    visit(&mol);
                }
            }
        }
    }

    pub fn verify_a2(&self) -> AxiomReport {
        let mut report = AxiomReport::new("a2");
        self.for_each_molecule(|mol| {
            report.checked += 1;
            let lhs = self.multiplicity(mol.x) * self.multiplicity(mol.y);
            let xf = mol.x.union(mol.f);
            let xt = mol.x.union(mol.t);
            let rhs = self.multiplicity(xf) * self.multiplicity(xt);
            if lhs != rhs {
                report.violations.push(Violation {
                    axiom: Axiom::A2,
                    subsets: vec![mol.x, mol.y],
                    detail: format!(
                        "m({}) m({}) = {lhs} but m({xf}) m({xt}) = {rhs}",
                        mol.x, mol.y
                    ),
                });
            }
        });
        report
    }

    /// `(-1)^|T| * sum over S in [X, Y] of (-1)^(|Y| - |S|) m(S)`.
    pub fn rho(&self, mol: &Molecule) -> BigInt {
        self.alternating_sum(mol.x, mol.y, mol.t.len())
    }

    fn alternating_sum(&self, x: Subset, y: Subset, t_len: usize) -> BigInt {
        let free = y.difference(x);
        let mut total = BigInt::zero();
        for d in free.submasks() {
            let m = self.multiplicity(x.union(d));
            if (free.len() - d.len()) % 2 == 0 {
                total += m;
            } else {
                total -= m;
            }
        }
        if t_len % 2 == 1 {
            -total
        } else {
            total
        }
    }

    pub fn verify_p(&self) -> AxiomReport {
        let mut report = AxiomReport::new("p");
        self.for_each_molecule(|mol| {
            report.checked += 1;
            let rho = self.rho(mol);
            if rho.is_negative() {
                report.violations.push(Violation {
                    axiom: Axiom::P,
                    subsets: vec![mol.x, mol.y],
                    detail: format!("rho({}, {}) = {rho}", mol.x, mol.y),
                });
            }
        });
        report
    }

    /// Positivity on intervals of constant rank.
    pub fn verify_p1(&self) -> AxiomReport {
        self.p1_with(Axiom::P1, "p1")
    }

    fn p1_with(&self, axiom: Axiom, name: &'static str) -> AxiomReport {
        let mut report = AxiomReport::new(name);
        for y in self.subsets() {
            let ry = self.rank(y);
            for x in y.submasks().filter(|&x| self.rank(x) == ry) {
                report.checked += 1;
                let rho = self.alternating_sum(x, y, y.difference(x).len());
                if rho.is_negative() {
                    report.violations.push(Violation {
                        axiom,
                        subsets: vec![x, y],
                        detail: format!("rho({x}, {y}) = {rho}"),
                    });
                }
            }
        }
        report
    }

    /// Positivity on intervals of constant dual rank, i.e. P1 of the dual.
    pub fn verify_p2(&self) -> AxiomReport {
        match self.dual() {
            Ok(dual) => dual.p1_with(Axiom::P2, "p2"),
            Err(err) => AxiomReport {
                name: "p2",
                checked: 0,
                violations: vec![Violation {
                    axiom: Axiom::P2,
                    subsets: vec![],
                    detail: format!("dual is undefined: {err}"),
                }],
            },
        }
    }

    pub fn verify_positivity(&self) -> PositivityReport {
        let p = self.verify_p();
        let a2 = self.verify_a2();
        let p1 = self.verify_p1();
        let p2 = self.verify_p2();
        let equivalence_holds = p.passed() == (a2.passed() && p1.passed() && p2.passed());
        PositivityReport { p, a2, p1, p2, equivalence_holds }
    }

    /// `rk*(S) = |S| - rk(E) + rk(E \ S)` and `m*(S) = m(E \ S)`.
    pub fn dual(&self) -> Result<ArithmeticMatroid> {
        let e = self.ground_set();
        let full = i64::from(self.full_rank());
        let mut rk = Vec::with_capacity(self.rk.len());
        let mut m = Vec::with_capacity(self.m.len());
        for s in self.subsets() {
            let comp = e.difference(s);
            let r = s.len() as i64 - full + i64::from(self.rank(comp));
            if r < 0 {
                return Err(Error::Invariant(format!("negative dual rank at {s}")));
            }
            rk.push(r as u32);
            m.push(self.multiplicity(comp).clone());
        }
        Ok(ArithmeticMatroid { k: self.k, rk, m })
    }

    /// The contraction `M / T` on `E \ T`, elements relabelled in ascending order.
    pub fn contraction(&self, t: Subset) -> Result<ArithmeticMatroid> {
        self.ground_set_check(t)?;
        let rest = self.k - t.len();
        let rt = self.rank(t);
        let mut rk = Vec::with_capacity(1 << rest);
        let mut m = Vec::with_capacity(1 << rest);
        for a in (0..1u64 << rest).map(Subset) {
            let s = a.expand(t).union(t);
            let r = self.rank(s).checked_sub(rt).ok_or_else(|| {
                Error::Invariant(format!("rk({s}) < rk({t}) in contraction"))
            })?;
            rk.push(r);
            m.push(self.multiplicity(s).clone());
        }
        Ok(ArithmeticMatroid { k: rest, rk, m })
    }

    /// The deletion `M \ T`: both tables restricted to subsets of `E \ T`.
    pub fn deletion(&self, t: Subset) -> Result<ArithmeticMatroid> {
        self.ground_set_check(t)?;
        let rest = self.k - t.len();
        let (rk, m) = (0..1u64 << rest)
            .map(|a| {
                let s = Subset(a).expand(t);
                (self.rank(s), self.multiplicity(s).clone())
            })
            .unzip();
        Ok(ArithmeticMatroid { k: rest, rk, m })
    }

    /// Checks `m(S) = gcd{ m(I) : I ⊆ S, |I| = rk(I) = rk(S) }` for every `S` and reports the
    /// first failure in bitmask order.
    pub fn gcd_property(&self) -> GcdCheck {
        for s in self.subsets() {
            let rs = self.rank(s);
            let g = s
                .submasks()
                .filter(|&i| i.len() as u32 == rs && self.rank(i) == rs)
                .fold(BigInt::zero(), |acc, i| acc.gcd(self.multiplicity(i)));
            if &g != self.multiplicity(s) {
                return GcdCheck {
                    holds: false,
                    witness: Some(GcdWitness {
                        subset: s,
                        multiplicity: self.multiplicity(s).clone(),
                        gcd: g,
                    }),
                };
            }
        }
        GcdCheck { holds: true, witness: None }
    }

    /// Sum of `m(S)` grouped by `(rk(E) - rk(S), |S| - rk(S))`.
    fn corank_nullity_weights(&self) -> Vec<Vec<BigInt>> {
        let full = self.full_rank() as usize;
        let mut w = vec![vec![BigInt::zero(); self.k + 1]; full + 1];
        for s in self.subsets() {
            let r = self.rank(s) as usize;
            w[full - r.min(full)][s.len().saturating_sub(r)] += self.multiplicity(s);
        }
        w
    }

    /// `T(x, y) = sum over S of m(S) (x - 1)^(rk(E) - rk(S)) (y - 1)^(|S| - rk(S))`.
    pub fn tutte(&self) -> BiPoly {
        let w = self.corank_nullity_weights();
        let mut out = BiPoly::zero();
        for (a, row) in w.iter().enumerate() {
            for (b, weight) in row.iter().enumerate() {
                if weight.is_zero() {
                    continue;
                }
                // expand (x - 1)^a (y - 1)^b
                for i in 0..=a {
                    let ci = signed_binomial(a, i);
                    for j in 0..=b {
                        let cj = signed_binomial(b, j);
                        out.add_term(i as u32, j as u32, weight * &ci * &cj);
                    }
                }
            }
        }
        out
    }

    /// `chi(t) = (-1)^r T(1 - t, 0)` with `r = rk(E)`.
    pub fn char_poly(&self) -> Poly {
        let at_zero = self.tutte().at_y_zero();
        let r = self.full_rank() as usize;
        let mut coeffs = vec![BigInt::zero(); at_zero.coeffs().len().max(1)];
        // substitute x = 1 - t
        for (i, c) in at_zero.coeffs().iter().enumerate() {
            for l in 0..=i {
                let mut term = c * binomial(i, l);
                if l % 2 == 1 {
                    term = -term;
                }
                coeffs[l] += term;
            }
        }
        if r % 2 == 1 {
            coeffs.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        Poly::new(coeffs)
    }

    /// Euler characteristic of the complement of a realizing arrangement in `E^ambient_n`:
    /// `(-1)^r T(1, 0)` when the arrangement is essential, and `0` otherwise.
    pub fn euler_characteristic(&self, ambient_n: usize, essential: bool) -> BigInt {
        if !essential || self.full_rank() as usize != ambient_n {
            return BigInt::zero();
        }
        let value = self.tutte().eval(&BigInt::one(), &BigInt::zero());
        if ambient_n % 2 == 1 {
            -value
        } else {
            value
        }
    }

    /// The bigraded polynomial `sum_i (-1)^i chi_i (1 + t)^(2(r - i)) s^i`, where
    /// `chi(q) = sum_i chi_i q^(r - i)`. Only defined when `rk(E) = ambient_n`.
    pub fn e2_poincare(&self, ambient_n: usize) -> Result<BiPoly> {
        let r = self.full_rank() as usize;
        if r != ambient_n {
            return Err(Error::NotEssential { rank: r, ambient: ambient_n });
        }
        let chi = self.char_poly();
        let mut out = BiPoly::zero().with_names("t", "s");
        for i in 0..=r {
            let mut chi_i = chi.coeff(r - i);
            if chi_i.is_zero() {
                continue;
            }
            if i % 2 == 1 {
                chi_i = -chi_i;
            }
            let e = 2 * (r - i);
            for p in 0..=e {
                out.add_term(p as u32, i as u32, &chi_i * binomial(e, p));
            }
        }
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficient of `z^i` in `(z - 1)^n`.
fn signed_binomial(n: usize, i: usize) -> BigInt {
    let b = binomial(n, i);
    if (n - i) % 2 == 1 {
        -b
    } else {
        b
    }
}
