//! Elliptic arrangements: `k` divisors in `E^n` given by the rows of a matrix over `R`.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{smith_form, IntMatrix, RingMatrix};
use crate::quadratic_order::CurveParams;
use crate::subset::{Subset, MAX_GROUND_SET};

/// Per-subset data of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetReport {
    pub subset: Subset,
    pub rank: usize,
    pub multiplicity: BigInt,
    pub layer_dim: usize,
    /// Invariant factors greater than one of the torsion of the cokernel.
    pub torsion_invariants: Vec<BigInt>,
}

#[derive(Debug)]
pub struct EllipticArrangement {
    matrix: RingMatrix,
    expansion: IntMatrix,
    memo: RwLock<HashMap<Subset, SubsetReport>>,
}

impl Clone for EllipticArrangement {
    fn clone(&self) -> Self {
        let memo = self.memo.read().map(|m| m.clone()).unwrap_or_default();
        EllipticArrangement {
            matrix: self.matrix.clone(),
            expansion: self.expansion.clone(),
            memo: RwLock::new(memo),
        }
    }
}

impl PartialEq for EllipticArrangement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl EllipticArrangement {
    pub fn new(matrix: RingMatrix) -> Result<Self> {
        if matrix.k() > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge { size: matrix.k(), cap: MAX_GROUND_SET });
        }
        let expansion = matrix.expand_lambda();
        Ok(EllipticArrangement { matrix, expansion, memo: RwLock::new(HashMap::new()) })
    }

    pub fn curve(&self) -> &CurveParams {
        self.matrix.curve()
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    /// The cached `2k x 2n` lattice expansion.
    pub fn expansion(&self) -> &IntMatrix {
        &self.expansion
    }

    /// Number of divisors.
    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Rows of the expansion belonging to the divisors in `subset`: both coordinates of
    /// each selected divisor, keeping the block layout.
    fn expansion_rows(&self, subset: Subset) -> IntMatrix {
        let k = self.k();
        let rows: Vec<usize> = subset.indices().chain(subset.indices().map(|i| k + i)).collect();
        self.expansion.select_rows(&rows)
    }

    /// Full per-subset data, memoized by subset.
    pub fn report(&self, subset: Subset) -> Result<SubsetReport> {
        subset.check_within(self.k())?;
        if let Some(hit) = self.memo.read().ok().and_then(|m| m.get(&subset).cloned()) {
            return Ok(hit);
        }
        let snf = smith_form(&self.expansion_rows(subset));
        debug_assert!(snf.rank % 2 == 0);
        let rank = snf.rank / 2;
        let report = SubsetReport {
            subset,
            rank,
            multiplicity: snf.torsion_order(),
            layer_dim: self.n() - rank,
            torsion_invariants: snf.torsion_factors(),
        };
        if let Ok(mut memo) = self.memo.write() {
            memo.insert(subset, report.clone());
        }
        Ok(report)
    }

    /// Codimension of the intersection of the divisors in `subset`.
    pub fn rank_of(&self, subset: Subset) -> Result<usize> {
        Ok(self.report(subset)?.rank)
    }

    /// Number of connected components (layers) of the intersection.
    pub fn multiplicity(&self, subset: Subset) -> Result<BigInt> {
        Ok(self.report(subset)?.multiplicity)
    }

    pub fn torsion_invariants(&self, subset: Subset) -> Result<Vec<BigInt>> {
        Ok(self.report(subset)?.torsion_invariants)
    }

    /// Complex dimension of every layer of the intersection.
    pub fn layer_dimension(&self, subset: Subset) -> Result<usize> {
        Ok(self.report(subset)?.layer_dim)
    }

    /// True when the divisors cut out finitely many points, i.e. the full rank is `n`.
    pub fn is_essential(&self) -> bool {
        self.rank_of(Subset::full(self.k())).map(|r| r == self.n()).unwrap_or(false)
    }

    /// The arrangement of `k + n` divisors in `E^k` given by the identity stacked over the
    /// conjugate transpose, and the indices `T` of the conjugate-transpose rows. Contracting
    /// its matroid by `T` gives the dual of this arrangement's matroid.
    pub fn dual_arrangement(&self) -> Result<(EllipticArrangement, Subset)> {
        let (k, n) = (self.k(), self.n());
        let stacked = RingMatrix::identity(self.curve().clone(), k)
            .vstack(&self.matrix.conj_transpose())?;
        let t = Subset::full(k + n).difference(Subset::full(k));
        Ok((EllipticArrangement::new(stacked)?, t))
    }

    /// Reports for every subset, in increasing bitmask order.
    pub fn all_reports(&self) -> Result<Vec<SubsetReport>> {
        Subset::full(self.k()).submasks().map(|s| self.report(s)).collect()
    }
}
