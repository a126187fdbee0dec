//! Canonical example arrangements used across the test suites and shipped as
//! fixture files, plus a deterministic random instance pool for the
//! cross-checking property suites.

use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::ArrangementSpec;
use crate::closure::spanning_assumption_holds;
use crate::linalg::RatMatrix;
use crate::rat::{int, rat, Rat};

#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: ArrangementSpec,
    pub alpha: Vec<Rat>,
}

fn mk(n: usize, r: usize, rows: Vec<Vec<Rat>>, alpha: Vec<Rat>) -> Instance {
    let g = RatMatrix::from_rows(rows).expect("well-formed rows");
    let spec = ArrangementSpec::from_alpha(n, r, g, &alpha).expect("valid instance");
    Instance { spec, alpha }
}

/// Segment family: one equation `v1 + v2 = 5`, rank 6, polynomial `5x + 1`.
pub fn segment_sum() -> Instance {
    mk(2, 2, vec![vec![int(1), int(1)]], vec![int(2), int(3)])
}

/// Mixed-sign family: `v1 - v2 = 3`, rank 3, polynomial `3x`.
pub fn segment_difference() -> Instance {
    mk(2, 2, vec![vec![int(1), int(-1)]], vec![int(2), int(-1)])
}

/// Skew family: `2 v1 - v2 = 3`, rank 2, genuine period-two behaviour.
pub fn segment_skew() -> Instance {
    mk(2, 2, vec![vec![int(2), int(-1)]], vec![int(1), int(-1)])
}

/// Nothing bounded: the closure is the whole fiber, rank 1.
pub fn whole_fiber() -> Instance {
    mk(2, 2, vec![vec![int(1), int(1)]], vec![int(2), int(-3)])
}

/// Line components: two bounded coordinates and one free direction.
pub fn line_components() -> Instance {
    mk(
        3,
        2,
        vec![vec![int(1), int(1), int(0)]],
        vec![int(2), int(3), rat(7, 2)],
    )
}

/// Companion point on the same arrangement as [`line_components`] whose
/// closure is the whole fiber.
pub fn line_components_wide() -> Instance {
    mk(
        3,
        2,
        vec![vec![int(1), int(1), int(0)]],
        vec![rat(5, 2), rat(5, 2), int(0)],
    )
}

/// Violates the spanning assumption: the free column lies in the span of
/// the bounded block.
pub fn spanning_violation() -> Instance {
    mk(
        3,
        3,
        vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]],
        vec![int(1), int(-2), rat(7, 2)],
    )
}

/// Every variable inverted: no constraints at all, rank 1.
pub fn all_inverted() -> Instance {
    mk(2, 0, vec![vec![int(1), int(1)]], vec![rat(3, 2), rat(7, 2)])
}

/// The base point projects exactly onto the dilation apex; ranks grow
/// linearly and no closed form exists.
pub fn apex_coincident() -> Instance {
    mk(2, 2, vec![vec![int(1), int(-1)]], vec![int(0), int(-1)])
}

/// Full-rank subtorus: the apex leaves the dilation axis, forcing the
/// direct-counting fallback.
pub fn no_dilation_axis() -> Instance {
    mk(
        2,
        2,
        vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        vec![int(2), int(-1)],
    )
}

/// Every named instance, for sweep-style suites. The spanning violation is
/// excluded; it is exercised separately.
pub fn all_valid() -> Vec<Instance> {
    vec![
        segment_sum(),
        segment_difference(),
        segment_skew(),
        whole_fiber(),
        line_components(),
        line_components_wide(),
        all_inverted(),
        apex_coincident(),
        no_dilation_axis(),
    ]
}

/// Deterministic xorshift generator; fixed seeds keep the pools
/// reproducible across runs and platforms.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// Rejection statistics of the random pool.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PoolStats {
    pub rejected_rank: usize,
    pub rejected_assumption: usize,
}

/// Draws `count` random arrangements satisfying the spanning assumption:
/// dimensions up to 5, subtorus rank up to 2, integer basis entries bounded
/// by 2, base coordinates with denominators up to 3. The character is
/// derived from the base point, so the fiber is never empty. Draws with a
/// rank-deficient basis or a failed spanning assumption are rejected and
/// counted.
pub fn random_pool(seed: u64, count: usize) -> (Vec<Instance>, PoolStats) {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut stats = PoolStats::default();
    while out.len() < count {
        let n = rng.range_i64(2, 5) as usize;
        let d = rng.range_i64(1, 2.min(n as i64 - 1)) as usize;
        let r = rng.range_i64(0, n as i64) as usize;
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            rows.push((0..n).map(|_| int(rng.range_i64(-2, 2))).collect::<Vec<Rat>>());
        }
        let g = match RatMatrix::from_rows(rows) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if g.rank() != d {
            stats.rejected_rank += 1;
            continue;
        }
        let alpha: Vec<Rat> = (0..n)
            .map(|_| {
                let den = rng.range_i64(1, 3);
                let num = rng.range_i64(-3 * den, 3 * den);
                rat(num, den)
            })
            .collect();
        let spec = match ArrangementSpec::from_alpha(n, r, g, &alpha) {
            Ok(s) => s,
            Err(_) => {
                stats.rejected_rank += 1;
                continue;
            }
        };
        // the spanning assumption needs the sign configuration
        let holds = (|| {
            let cs = crate::arrangement::constraint_system(&spec, &alpha).ok()?;
            let cert = crate::closure::partition_indices(&spec, &cs).ok()?;
            let sc = crate::closure::sign_configuration(&spec, &cert, &alpha);
            Some(spanning_assumption_holds(&spec, &sc))
        })();
        match holds {
            Some(true) => out.push(Instance { spec, alpha }),
            Some(false) => stats.rejected_assumption += 1,
            None => stats.rejected_rank += 1,
        }
    }
    (out, stats)
}
