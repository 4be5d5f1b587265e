use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::One;
use rand::Rng;

use crate::graph::Graph;
use crate::label::VertexLabel;

use super::{rng, ConstructionError};

/// Closed intervals with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFamily {
    intervals: Vec<(Rational64, Rational64)>,
}

impl IntervalFamily {
    pub fn new(intervals: Vec<(Rational64, Rational64)>) -> Result<Self, ConstructionError> {
        if let Some(i) = intervals.iter().position(|(l, r)| l >= r) {
            return Err(ConstructionError::BadInterval(i));
        }
        Ok(IntervalFamily { intervals })
    }

    /// Unit intervals `[l, l + 1]`.
    pub fn unit(lefts: impl IntoIterator<Item = Rational64>) -> Self {
        IntervalFamily {
            intervals: lefts.into_iter().map(|l| (l, l + Rational64::one())).collect(),
        }
    }

    pub fn intervals(&self) -> &[(Rational64, Rational64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.intervals.iter().all(|(l, r)| r - l == Rational64::one())
    }

    pub fn is_normalized(&self) -> bool {
        self.intervals.iter().all(|(l, r)| !l.is_integer() && !r.is_integer())
    }

    pub(crate) fn check_normalized_unit(&self) -> Result<(), ConstructionError> {
        if let Some(i) = self.intervals.iter().position(|(l, r)| r - l != Rational64::one()) {
            return Err(ConstructionError::NotUnit(i));
        }
        if let Some(i) = self.intervals.iter().position(|(l, r)| l.is_integer() || r.is_integer()) {
            return Err(ConstructionError::NotNormalized(i));
        }
        Ok(())
    }

    /// Shifts every interval by the same amount so that no endpoint is an
    /// integer. A common shift keeps the overlap relation intact.
    ///
    /// With `D` distinct endpoints the shift is the first `j / (4D)`,
    /// `j = 1, 2, ...`, that clears every integer; at most `D + 1` candidates
    /// are needed since each endpoint rules out one.
    pub fn normalized(&self) -> IntervalFamily {
        if self.is_normalized() {
            return self.clone();
        }
        let endpoints: BTreeSet<Rational64> = self.intervals.iter().flat_map(|&(l, r)| [l, r]).collect();
        let d = endpoints.len() as i64;
        for j in 1..=d + 1 {
            let eps = Rational64::new(j, 4 * d);
            if endpoints.iter().all(|e| !(e + eps).is_integer()) {
                return IntervalFamily {
                    intervals: self.intervals.iter().map(|&(l, r)| (l + eps, r + eps)).collect(),
                };
            }
        }
        unreachable!("one of D + 1 distinct shifts avoids all integers")
    }

    pub fn overlap(&self, a: usize, b: usize) -> bool {
        let (l1, r1) = self.intervals[a];
        let (l2, r2) = self.intervals[b];
        l1.max(l2) <= r1.min(r2)
    }
}

/// Intersection graph of a normalized unit family; interval `i` is vertex `i`.
pub fn unit_interval_graph(f: &IntervalFamily) -> Result<Graph, ConstructionError> {
    f.check_normalized_unit()?;
    let labels = (0..f.len()).map(VertexLabel::from).collect();
    Ok(Graph::from_predicate(labels, |a, b| f.overlap(a, b)).expect("index labels"))
}

/// `n` unit intervals with left endpoints drawn from multiples of 1/8 in
/// `[0, span)`, then normalized.
pub fn random_unit_interval_family(n: usize, span: i64, seed: u64) -> IntervalFamily {
    let mut rng = rng(seed);
    let lefts = (0..n).map(|_| Rational64::new(rng.gen_range(0..8 * span.max(1)), 8));
    IntervalFamily::unit(lefts.collect::<Vec<_>>()).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn overlap_examples() {
        let f = IntervalFamily::unit([q(1, 2), q(6, 5)]);
        assert_eq!(unit_interval_graph(&f).unwrap().m(), 1);
        let f = IntervalFamily::unit([q(1, 2), q(5, 2)]);
        assert_eq!(unit_interval_graph(&f).unwrap().m(), 0);
        let f = IntervalFamily::unit((1..=5).map(|i| q(i, 10)));
        assert_eq!(unit_interval_graph(&f).unwrap(), Graph::complete(5));
    }

    #[test]
    fn rejects_bad_families() {
        let f = IntervalFamily::unit([q(1, 1)]);
        assert_eq!(unit_interval_graph(&f), Err(ConstructionError::NotNormalized(0)));
        let f = IntervalFamily::new(vec![(q(1, 2), q(3, 1))]).unwrap();
        assert_eq!(unit_interval_graph(&f), Err(ConstructionError::NotUnit(0)));
        assert!(IntervalFamily::new(vec![(q(1, 1), q(1, 1))]).is_err());
    }

    #[test]
    fn normalization_preserves_overlaps() {
        // [0,1] and [1,2] touch at 1
        let raw = IntervalFamily::unit([q(0, 1), q(1, 1), q(3, 4), q(5, 2)]);
        let f = raw.normalized();
        assert!(f.is_normalized() && f.is_unit());
        for a in 0..raw.len() {
            for b in 0..raw.len() {
                assert_eq!(raw.overlap(a, b), f.overlap(a, b));
            }
        }
    }

    #[test]
    fn random_family_is_normalized() {
        for seed in 0..20 {
            let f = random_unit_interval_family(15, 6, seed);
            assert!(f.is_normalized() && f.is_unit() && f.len() == 15);
        }
    }
}
