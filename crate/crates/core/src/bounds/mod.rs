//! χ-bounding functions as composable values, the recursions that build
//! them, and Ramsey-number support.

mod ramsey;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use ramsey::{multicolor_ramsey_upper, ramsey_exact, ramsey_lower, ramsey_upper, ramsey_upper_big, EXACT_MAX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{0}")]
    Parameter(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("argument {0} does not fit in 64 bits")]
    Overflow(BigUint),
    #[error("{name} decreases from {at_prev} at {} to {at_n} at {n}", n - 1)]
    NotMonotone {
        name: String,
        n: u64,
        at_prev: BigUint,
        at_n: BigUint,
    },
    #[error("value would have about {bits} bits, above the limit of {limit}")]
    TooLarge { bits: u64, limit: u64 },
}

type Eval = dyn Fn(u64) -> Result<BigUint, BoundError> + Send + Sync;

/// A function from clique number to a colour bound, with a description of
/// where it comes from and a shared memo of evaluated points.
#[derive(Clone)]
pub struct BoundFn {
    name: String,
    eval: Arc<Eval>,
    memo: Arc<Mutex<HashMap<u64, BigUint>>>,
}

impl fmt::Debug for BoundFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundFn").field("name", &self.name).finish()
    }
}

impl BoundFn {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(u64) -> Result<BigUint, BoundError> + Send + Sync + 'static,
    ) -> BoundFn {
        BoundFn {
            name: name.into(),
            eval: Arc::new(eval),
            memo: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, n: u64) -> Result<BigUint, BoundError> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(&n) {
            return Ok(v.clone());
        }
        // computed outside the lock so nested evaluations cannot deadlock
        let v = (self.eval)(n)?;
        self.memo.lock().expect("memo lock").insert(n, v.clone());
        Ok(v)
    }

    pub fn eval_big(&self, n: &BigUint) -> Result<BigUint, BoundError> {
        let n = n.to_u64().ok_or_else(|| BoundError::Overflow(n.clone()))?;
        self.eval(n)
    }

    /// Evaluates `1..=upto` and reports the first decrease.
    pub fn check_non_decreasing(&self, upto: u64) -> Result<(), BoundError> {
        let mut prev = self.eval(1)?;
        for n in 2..=upto {
            let here = self.eval(n)?;
            if here < prev {
                return Err(BoundError::NotMonotone {
                    name: self.name.clone(),
                    n,
                    at_prev: prev,
                    at_n: here,
                });
            }
            prev = here;
        }
        Ok(())
    }
}

pub fn identity_bound() -> BoundFn {
    BoundFn::new("identity", |n| Ok(BigUint::from(n)))
}

/// `ω + 1`, which bounds χ on line graphs.
pub fn vizing_bound() -> BoundFn {
    BoundFn::new("vizing", |n| Ok(BigUint::from(n) + 1u32))
}

/// Pointwise product, a χ-bounding function for the graph-intersection of
/// the classes.
pub fn product_bound(fs: &[BoundFn]) -> Result<BoundFn, BoundError> {
    if fs.is_empty() {
        return Err(BoundError::Parameter("product of no functions".into()));
    }
    let fs = fs.to_vec();
    let name = format!("product({})", fs.iter().map(BoundFn::name).collect::<Vec<_>>().join(", "));
    Ok(BoundFn::new(name, move |n| {
        fs.iter().try_fold(BigUint::one(), |acc, f| Ok(acc * f.eval(n)?))
    }))
}

/// `ω ↦ f(R(ω + 1, r) − 1)`: for `rK1`-free `G`, `ω(H)` is below
/// `R(ω(G ∩ H) + 1, r)`, so composing with a bound `f` for `H`'s class
/// bounds `G ∩ H`. For `r = 1` the argument is clamped to 1.
pub fn rk1_guard_bound(f: &BoundFn, r: u64) -> Result<BoundFn, BoundError> {
    if r == 0 {
        return Err(BoundError::Parameter("r must be at least 1".into()));
    }
    let f = f.clone();
    let name = format!("rk1-guard({}, r={r})", f.name());
    Ok(BoundFn::new(name, move |n| {
        let arg = ramsey_upper(n + 1, r)? - 1u32;
        f.eval_big(&arg.max(BigUint::one()))
    }))
}

/// `f_r` from `f_0 = base` by `f_j(1) = 1` and
/// `f_j(n) = 2 f_j(n − 1) + f_{j−1}(n)`.
pub fn fr_recursion(base: &BoundFn, r: u64) -> BoundFn {
    let base = base.clone();
    let rows: Arc<Mutex<Vec<Vec<BigUint>>>> = Arc::new(Mutex::new(Vec::new()));
    let name = format!("f_{r} over {}", base.name());
    BoundFn::new(name, move |n| {
        if r == 0 {
            return base.eval(n);
        }
        if n == 0 {
            return Ok(BigUint::zero());
        }
        let mut rows = rows.lock().expect("rows lock");
        // rows[j - 1][m - 1] holds f_j(m)
        rows.resize(r as usize, Vec::new());
        for j in 1..=r as usize {
            while (rows[j - 1].len() as u64) < n {
                let m = rows[j - 1].len() as u64 + 1;
                let v = if m == 1 {
                    BigUint::one()
                } else {
                    let below = if j == 1 { base.eval(m)? } else { rows[j - 2][m as usize - 1].clone() };
                    BigUint::from(2u32) * &rows[j - 1][m as usize - 2] + below
                };
                rows[j - 1].push(v);
            }
        }
        Ok(rows[r as usize - 1][n as usize - 1].clone())
    })
}

/// Values with more bits than this are refused by [`self_guard_bound`].
pub const SELF_GUARD_MAX_BITS: u64 = 1 << 22;

/// The bound `f(n, n_1, ..., n_t)` for intersections of `t` classes each
/// forbidding graphs with added `K_2` copies, where `guards[i]` plays `g_i`:
///
/// - `f = 1` when `n = 1`;
/// - `f = min{ g_i(n) : n_i = 0 }` when some `n_i = 0`;
/// - otherwise `f = M · (t+2)^{t(R−1)} · R` with `R = R_{2^t}(t+2)`,
///   `M = max{ t^{t+1} + 1, (t+1) f(n−1, ..) + 1, C (t+1)(t+2) }` and
///   `C = max_i f(n, .., n_i − 1, ..)`.
///
/// `n = 0` gives 0. The multicolour Ramsey number is replaced by an upper
/// bound; the result stays a valid bound since it only grows. Values above
/// [`SELF_GUARD_MAX_BITS`] bits are refused.
pub fn self_guard_bound(guards: &[BoundFn], n: u64, ns: &[u64]) -> Result<BigUint, BoundError> {
    let t = guards.len() as u64;
    if t == 0 || ns.len() != guards.len() {
        return Err(BoundError::Parameter(format!(
            "need t >= 1 guard functions and t = {t} counts, got {}",
            ns.len()
        )));
    }
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let needs_tower = n > 1 && ns.iter().all(|&x| x > 0);
    let factor = if needs_tower {
        let ramsey = multicolor_ramsey_upper(1 << t.min(63), t + 2)?;
        let exp = ramsey
            .to_u64()
            .and_then(|r| t.checked_mul(r - 1))
            .ok_or(BoundError::TooLarge {
                bits: u64::MAX,
                limit: SELF_GUARD_MAX_BITS,
            })?;
        let bits = ((t + 2) as f64).log2() * exp as f64 + ramsey.bits() as f64;
        if bits > SELF_GUARD_MAX_BITS as f64 {
            return Err(BoundError::TooLarge {
                bits: bits as u64,
                limit: SELF_GUARD_MAX_BITS,
            });
        }
        BigUint::from(t + 2).pow(exp as u32) * ramsey
    } else {
        BigUint::one()
    };
    let mut memo = HashMap::new();
    SelfGuard { guards, t, factor }.eval(n, ns.to_vec(), &mut memo)
}

struct SelfGuard<'a> {
    guards: &'a [BoundFn],
    t: u64,
    factor: BigUint,
}

impl SelfGuard<'_> {
    fn eval(&self, n: u64, ns: Vec<u64>, memo: &mut HashMap<(u64, Vec<u64>), BigUint>) -> Result<BigUint, BoundError> {
        if n == 1 {
            return Ok(BigUint::one());
        }
        if ns.contains(&0) {
            let mut best: Option<BigUint> = None;
            for (g, _) in self.guards.iter().zip(&ns).filter(|(_, &k)| k == 0) {
                let v = g.eval(n)?;
                best = Some(best.map_or(v.clone(), |b| b.min(v)));
            }
            return Ok(best.expect("some count is zero"));
        }
        let key = (n, ns);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let (n, ns) = key;
        let t = self.t;
        let mut c = BigUint::zero();
        for i in 0..ns.len() {
            let mut lower = ns.clone();
            lower[i] -= 1;
            c = c.max(self.eval(n, lower, memo)?);
        }
        let prev = self.eval(n - 1, ns.clone(), memo)?;
        let m = (BigUint::from(t).pow(t as u32 + 1) + 1u32)
            .max(BigUint::from(t + 1) * prev + 1u32)
            .max(c * BigUint::from((t + 1) * (t + 2)));
        let v = m * &self.factor;
        memo.insert((n, ns), v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn simple_functions() {
        assert_eq!(vizing_bound().eval(1).unwrap(), big(2));
        assert_eq!(vizing_bound().eval(5).unwrap(), big(6));
        let p = product_bound(&[identity_bound()]).unwrap();
        assert_eq!(p.eval(7).unwrap(), big(7));
        let p = product_bound(&[vizing_bound(), vizing_bound()]).unwrap();
        assert_eq!(p.eval(2).unwrap(), big(9));
        p.check_non_decreasing(20).unwrap();
        assert!(product_bound(&[]).is_err());
        let bad = BoundFn::new("drop", |n| Ok(big(10 - n.min(10))));
        assert!(matches!(bad.check_non_decreasing(3), Err(BoundError::NotMonotone { n: 2, .. })));
    }

    #[test]
    fn rk1_guard() {
        let g = rk1_guard_bound(&identity_bound(), 3).unwrap();
        assert_eq!(g.eval(2).unwrap(), big(5));
        g.check_non_decreasing(8).unwrap();
        let one = rk1_guard_bound(&vizing_bound(), 1).unwrap();
        assert_eq!(one.eval(4).unwrap(), big(2));
        assert!(rk1_guard_bound(&identity_bound(), 0).is_err());
    }

    #[test]
    fn fr_values() {
        let f1 = fr_recursion(&identity_bound(), 1);
        assert_eq!(f1.eval(1).unwrap(), big(1));
        assert_eq!(f1.eval(2).unwrap(), big(4));
        assert_eq!(f1.eval(3).unwrap(), big(11));
        let f2 = fr_recursion(&identity_bound(), 2);
        for n in 1..15 {
            assert!(f2.eval(n).unwrap() >= f1.eval(n).unwrap());
            assert!(f1.eval(n).unwrap() >= identity_bound().eval(n).unwrap());
        }
        f2.check_non_decreasing(30).unwrap();
        assert_eq!(fr_recursion(&vizing_bound(), 0).eval(4).unwrap(), big(5));
    }

    #[test]
    fn self_guard_values() {
        let id = [identity_bound()];
        assert_eq!(self_guard_bound(&id, 1, &[3]).unwrap(), big(1));
        assert_eq!(self_guard_bound(&id, 4, &[0]).unwrap(), big(4));
        assert_eq!(self_guard_bound(&id, 0, &[2]).unwrap(), big(0));
        // M = max{2, 2 f(1,1) + 1, f(2,0) * 6} = 12, factor 3^5 * 6
        assert_eq!(self_guard_bound(&id, 2, &[1]).unwrap(), big(17496));
        let two = [identity_bound(), vizing_bound()];
        assert_eq!(self_guard_bound(&two, 3, &[0, 0]).unwrap(), big(3));
        assert_eq!(self_guard_bound(&two, 3, &[2, 0]).unwrap(), big(4));
        assert!(self_guard_bound(&[], 2, &[]).is_err());
        assert!(matches!(self_guard_bound(&two, 2, &[1, 1]), Err(BoundError::TooLarge { .. })));
        for n in 1..5 {
            for k in 0..4 {
                let here = self_guard_bound(&id, n, &[k]).unwrap();
                assert!(here <= self_guard_bound(&id, n + 1, &[k]).unwrap());
                if k > 0 {
                    assert!(here >= self_guard_bound(&id, n, &[k - 1]).unwrap());
                }
            }
        }
    }
}
