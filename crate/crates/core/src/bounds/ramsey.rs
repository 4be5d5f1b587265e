//! Two-colour and multicolour Ramsey numbers: exact values by exhaustive
//! search at tiny sizes, and upper bounds beyond.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::BoundError;

/// Largest argument accepted by [`ramsey_exact`] when both arguments are at
/// least 3.
pub const EXACT_MAX: u64 = 4;

/// Exact `R(s, t)`: the least `n` such that every graph on `n` vertices has
/// a clique of size `s` or an independent set of size `t`.
///
/// Cases with `min(s, t) <= 2` follow from the definition. The others are
/// found by searching vertex by vertex for the largest graph avoiding both,
/// which is feasible up to `R(3, 4)`; `R(4, 4)` and beyond are refused.
pub fn ramsey_exact(s: u64, t: u64) -> Result<u64, BoundError> {
    if s == 0 || t == 0 {
        return Err(BoundError::Parameter(format!("Ramsey arguments must be positive, got ({s}, {t})")));
    }
    let (a, b) = (s.min(t), s.max(t));
    if a == 1 {
        return Ok(1);
    }
    if a == 2 {
        return Ok(b);
    }
    if b > EXACT_MAX || a == EXACT_MAX {
        return Err(BoundError::Infeasible(format!("exact R({s}, {t}) is beyond exhaustive search")));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&v) = cache.lock().expect("cache lock").get(&(a, b)) {
        return Ok(v);
    }
    let mut n = 1;
    while avoider_exists(n, s as usize, t as usize) {
        n += 1;
    }
    cache.lock().expect("cache lock").insert((a, b), n as u64);
    Ok(n as u64)
}

/// Lower bound on `R(s, t)`: exact where [`ramsey_exact`] is feasible,
/// otherwise one more than the bound for the larger argument reduced by
/// one, since adding a universal vertex to an extremal graph shows
/// `R(s + 1, t) > R(s, t)`.
pub fn ramsey_lower(s: u64, t: u64) -> Result<u64, BoundError> {
    match ramsey_exact(s, t) {
        Err(BoundError::Infeasible(_)) if s >= t => Ok(ramsey_lower(s - 1, t)? + 1),
        Err(BoundError::Infeasible(_)) => Ok(ramsey_lower(s, t - 1)? + 1),
        other => other,
    }
}

/// Whether some graph on `n` vertices has no `K_s` and no independent set
/// of size `t`.
fn avoider_exists(n: usize, s: usize, t: usize) -> bool {
    fn has_clique(adj: &[u32], cand: u32, size: usize) -> bool {
        if size == 0 {
            return true;
        }
        if (cand.count_ones() as usize) < size {
            return false;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if has_clique(adj, rest & adj[v], size - 1) {
                return true;
            }
        }
        false
    }
    fn extend(adj: &mut Vec<u32>, comp: &mut Vec<u32>, n: usize, s: usize, t: usize) -> bool {
        let v = adj.len();
        if v == n {
            return true;
        }
        let all = (1u32 << v) - 1;
        for nb in 0..=all {
            let non = all & !nb;
            if has_clique(adj, nb, s - 1) || has_clique(comp, non, t - 1) {
                continue;
            }
            for u in 0..v {
                if nb >> u & 1 == 1 {
                    adj[u] |= 1 << v;
                } else {
                    comp[u] |= 1 << v;
                }
            }
            adj.push(nb);
            comp.push(non);
            if extend(adj, comp, n, s, t) {
                return true;
            }
            adj.pop();
            comp.pop();
            for u in 0..v {
                adj[u] &= !(1 << v);
                comp[u] &= !(1 << v);
            }
        }
        false
    }
    extend(&mut Vec::new(), &mut Vec::new(), n, s, t)
}

/// Values known exactly, shared with [`ramsey_exact`] and cross-checked by
/// the tests.
fn table(s: u64, t: u64) -> Option<u64> {
    let (a, b) = (s.min(t), s.max(t));
    match (a, b) {
        (1, _) => Some(1),
        (2, _) => Some(b),
        (3, 3) => Some(6),
        (3, 4) => Some(9),
        _ => None,
    }
}

/// Largest table the additive recurrence fills before switching to the
/// binomial bound.
const RECURRENCE_CELLS: u64 = 1 << 20;

fn binomial(n: &BigUint, k: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    out
}

/// Upper bound on `R(s, t)`: exact for tabulated values, otherwise
/// `R(s, t) <= R(s - 1, t) + R(s, t - 1)` seeded with the table, and the
/// closed form `C(s + t - 2, s - 1)` once the recurrence table would be too
/// large.
pub fn ramsey_upper(s: u64, t: u64) -> Result<BigUint, BoundError> {
    ramsey_upper_big(s, &BigUint::from(t))
}

/// [`ramsey_upper`] with an arbitrary-precision second argument.
pub fn ramsey_upper_big(s: u64, t: &BigUint) -> Result<BigUint, BoundError> {
    if s == 0 || *t == BigUint::ZERO {
        return Err(BoundError::Parameter("Ramsey arguments must be positive".into()));
    }
    match t.to_u64() {
        Some(t) if s.saturating_mul(t) <= RECURRENCE_CELLS => Ok(recurrence(s, t)),
        _ => {
            let (small, big) = match t.to_u64() {
                Some(tt) if tt < s => (tt, BigUint::from(s)),
                _ => (s, t.clone()),
            };
            Ok(binomial(&(big + BigUint::from(small) - 2u32), small - 1))
        }
    }
}

fn recurrence(s: u64, t: u64) -> BigUint {
    let (a, b) = (s.min(t), s.max(t));
    let mut memo: HashMap<(u64, u64), BigUint> = HashMap::new();
    // rows i = 1..=a, columns j = 1..=b, filled in increasing order
    for i in 1..=a {
        for j in 1..=b {
            let v = match table(i, j) {
                Some(v) => BigUint::from(v),
                None => &memo[&(i - 1, j)] + &memo[&(i, j - 1)],
            };
            memo.insert((i, j), v);
        }
        if i >= 2 {
            memo.retain(|&(r, _), _| r + 1 >= i);
        }
    }
    memo.remove(&(a, b)).expect("filled")
}

/// Upper bound on `R_k(t)`, the least `n` such that every `k`-colouring of
/// the edges of `K_n` has a monochromatic `K_t`. Uses `R_1(t) = t` and
/// merging colours: `R_k(t) <= R(t, R_{k-1}(t))`.
pub fn multicolor_ramsey_upper(k: u64, t: u64) -> Result<BigUint, BoundError> {
    if k == 0 || t == 0 {
        return Err(BoundError::Parameter(format!("need k, t >= 1, got ({k}, {t})")));
    }
    let mut r = BigUint::from(t);
    for _ in 1..k {
        r = ramsey_upper_big(t, &r)?;
    }
    Ok(r)
}
