use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Hard cap on the sieve size; requests beyond it are capacity errors.
pub const SIEVE_HARD_CAP: u64 = 10_000_000;
/// Default sieve bound when neither config nor environment overrides it.
pub const SIEVE_DEFAULT: u64 = 1_000_000;
/// Environment variable consulted on first sieve access.
pub const SIEVE_ENV_VAR: &str = "HLZETA_SIEVE_BOUND";

/// Integer-valued arithmetic functions served by the sieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Mobius,
    Mangoldt,
    Liouville,
    OmegaDistinct,
    DivisorCount,
    SigmaS,
    R3,
    ChebyshevPsi,
    LcmUpto,
}

struct SieveData {
    bound: u64,
    /// smallest prime factor; spf[p] == p for primes, spf[0] = spf[1] = 0
    spf: Vec<u32>,
    primes: Vec<u32>,
}

fn build_sieve(bound: u64) -> SieveData {
    let n = bound as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let ip = i * p as usize;
            if p > si || ip > n {
                break;
            }
            spf[ip] = p;
        }
    }
    SieveData { bound, spf, primes }
}

fn sieve_cell() -> &'static RwLock<Option<Arc<SieveData>>> {
    static CELL: OnceLock<RwLock<Option<Arc<SieveData>>>> = OnceLock::new();
    CELL.get_or_init(|| RwLock::new(None))
}

fn default_bound() -> u64 {
    std::env::var(SIEVE_ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .map(|v| v.clamp(1000, SIEVE_HARD_CAP))
        .unwrap_or(SIEVE_DEFAULT)
}

/// Make sure the process-wide sieve covers at least `bound`. Idempotent and
/// race-free: concurrent callers may both build, the larger table wins.
pub fn ensure_sieve(bound: u64) -> Result<()> {
    if bound > SIEVE_HARD_CAP {
        return Err(Error::Capacity {
            requested: bound,
            limit: SIEVE_HARD_CAP,
        });
    }
    {
        let guard = sieve_cell().read().unwrap();
        if let Some(s) = guard.as_ref() {
            if s.bound >= bound {
                return Ok(());
            }
        }
    }
    let fresh = Arc::new(build_sieve(bound.max(default_bound())));
    let mut guard = sieve_cell().write().unwrap();
    match guard.as_ref() {
        Some(existing) if existing.bound >= fresh.bound => {}
        _ => *guard = Some(fresh),
    }
    Ok(())
}

fn sieve_for(n: u64) -> Result<Arc<SieveData>> {
    if n > SIEVE_HARD_CAP {
        return Err(Error::Capacity {
            requested: n,
            limit: SIEVE_HARD_CAP,
        });
    }
    {
        let guard = sieve_cell().read().unwrap();
        if let Some(s) = guard.as_ref() {
            if s.bound >= n {
                return Ok(Arc::clone(s));
            }
            return Err(Error::Capacity {
                requested: n,
                limit: s.bound,
            });
        }
    }
    ensure_sieve(n.max(default_bound()))?;
    let guard = sieve_cell().read().unwrap();
    let s = guard.as_ref().unwrap();
    if s.bound >= n {
        Ok(Arc::clone(s))
    } else {
        Err(Error::Capacity {
            requested: n,
            limit: s.bound,
        })
    }
}

/// (prime, multiplicity) factorization via the sieve.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::domain("factorize(0)"));
    }
    let s = sieve_for(n)?;
    let mut out = Vec::new();
    let mut x = n as usize;
    while x > 1 {
        let p = s.spf[x] as u64;
        let mut e = 0;
        while x as u64 % p == 0 {
            x /= p as usize;
            e += 1;
        }
        out.push((p, e));
    }
    Ok(out)
}

pub fn mobius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// log p if n = p^k, else 0.
pub fn mangoldt(n: u64) -> Result<f64> {
    if n <= 1 {
        return Ok(0.0);
    }
    let f = factorize(n)?;
    if f.len() == 1 {
        Ok((f[0].0 as f64).ln())
    } else {
        Ok(0.0)
    }
}

pub fn liouville(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    let omega_total: u32 = f.iter().map(|&(_, e)| e).sum();
    Ok(if omega_total % 2 == 0 { 1 } else { -1 })
}

pub fn omega_distinct(n: u64) -> Result<u64> {
    Ok(factorize(n)?.len() as u64)
}

pub fn divisor_count(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.iter().map(|&(_, e)| (e + 1) as u64).product())
}

/// sigma^s(n) = sum over divisors d of d^s, real s.
pub fn sigma(n: u64, s: f64) -> Result<f64> {
    let f = factorize(n)?;
    let mut acc = 1.0;
    for (p, e) in f {
        let mut geom = 1.0;
        let mut pp = 1.0;
        for _ in 0..e {
            pp *= (p as f64).powf(s);
            geom += pp;
        }
        acc *= geom;
    }
    Ok(acc)
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for (p, e) in f {
        let prev = out.clone();
        let mut pp = 1u64;
        for _ in 0..e {
            pp *= p;
            out.extend(prev.iter().map(|d| d * pp));
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// r3(n): representations of n as an ordered triple of signed squares.
pub fn r3(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut count = 0u64;
    let amax = isqrt_u64(n);
    for a in 0..=amax {
        let wa = if a == 0 { 1 } else { 2 };
        let ra = n - a * a;
        let bmax = isqrt_u64(ra);
        for b in 0..=bmax {
            let wb = if b == 0 { 1 } else { 2 };
            let rb = ra - b * b;
            let c = isqrt_u64(rb);
            if c * c == rb {
                let wc = if c == 0 { 1 } else { 2 };
                count += wa * wb * wc;
            }
        }
    }
    count
}

/// Table of r3(0..=limit) via the square-counting convolution.
pub fn r3_table(limit: usize) -> Vec<u32> {
    let mut r2 = vec![0u32; limit + 1];
    let amax = isqrt_u64(limit as u64) as usize;
    for a in 0..=amax {
        let wa: u32 = if a == 0 { 1 } else { 2 };
        let mut k = a * a;
        let mut b = 0usize;
        while k <= limit {
            let wb: u32 = if b == 0 { 1 } else { 2 };
            r2[k] += wa * wb;
            b += 1;
            k = a * a + b * b;
        }
    }
    let mut out = vec![0u32; limit + 1];
    for n in 0..=limit {
        let mut acc = 0u32;
        let cmax = isqrt_u64(n as u64) as usize;
        for c in 0..=cmax {
            let wc: u32 = if c == 0 { 1 } else { 2 };
            acc += wc * r2[n - c * c];
        }
        out[n] = acc;
    }
    out
}

/// Chebyshev psi(x) = sum of log p over prime powers p^k <= x.
pub fn chebyshev_psi(x: u64) -> Result<f64> {
    if x < 2 {
        return Ok(0.0);
    }
    let s = sieve_for(x)?;
    let mut acc = 0.0;
    for &p in &s.primes {
        let p = p as u64;
        if p > x {
            break;
        }
        let lp = (p as f64).ln();
        let mut pk = p;
        loop {
            acc += lp;
            if pk > x / p {
                break;
            }
            pk *= p;
        }
    }
    Ok(acc)
}

/// lcm(1..=n) as a float, computed as the product of maximal prime powers.
/// Overflows to infinity near n ~ 700; callers wanting exactness use psi.
pub fn lcm_upto(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("lcm_upto needs n >= 1"));
    }
    if n == 1 {
        return Ok(1.0);
    }
    let s = sieve_for(n)?;
    let mut acc = 1.0f64;
    for &p in &s.primes {
        let p = p as u64;
        if p > n {
            break;
        }
        let mut pk = p;
        while pk <= n / p {
            pk *= p;
        }
        acc *= pk as f64;
    }
    Ok(acc)
}

/// sigma^1 prefix table: `tab[n]` = sum of divisors of n, for n <= limit.
pub fn sigma1_table(limit: usize) -> Result<Vec<u64>> {
    if limit as u64 > SIEVE_HARD_CAP {
        return Err(Error::Capacity {
            requested: limit as u64,
            limit: SIEVE_HARD_CAP,
        });
    }
    let mut tab = vec![0u64; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            tab[m] += d as u64;
        }
    }
    Ok(tab)
}

/// Mobius values mu(1..=limit) in one pass.
pub fn mobius_table(limit: usize) -> Result<Vec<i8>> {
    let s = sieve_for(limit as u64)?;
    let mut mu = vec![0i8; limit + 1];
    if limit >= 1 {
        mu[1] = 1;
    }
    for i in 2..=limit {
        let p = s.spf[i] as usize;
        let m = i / p;
        mu[i] = if m % p == 0 { 0 } else { -mu[m] };
    }
    Ok(mu)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Uniform dispatcher over the sieve-backed functions. `s` is only read by
/// the sigma kind.
pub fn arithmetic(kind: ArithKind, n: u64, s: Option<f64>) -> Result<f64> {
    if n < 1 && !matches!(kind, ArithKind::R3) {
        return Err(Error::domain("arithmetic functions need n >= 1"));
    }
    Ok(match kind {
        ArithKind::Mobius => mobius(n)? as f64,
        ArithKind::Mangoldt => mangoldt(n)?,
        ArithKind::Liouville => liouville(n)? as f64,
        ArithKind::OmegaDistinct => omega_distinct(n)? as f64,
        ArithKind::DivisorCount => divisor_count(n)? as f64,
        ArithKind::SigmaS => sigma(n, s.unwrap_or(1.0))?,
        ArithKind::R3 => r3(n) as f64,
        ArithKind::ChebyshevPsi => chebyshev_psi(n)?,
        ArithKind::LcmUpto => lcm_upto(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
    }

    #[test]
    fn divisor_count_of_six() {
        assert_eq!(divisor_count(6).unwrap(), 4);
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
    }

    #[test]
    fn sigma_matches_brute_force() {
        for n in 1..200u64 {
            for &s in &[1.0, -2.0, 0.5] {
                let brute: f64 = (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| (d as f64).powf(s))
                    .sum();
                let v = sigma(n, s).unwrap();
                assert!(
                    (v - brute).abs() < 1e-9 * (1.0 + brute.abs()),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn mobius_divisor_sum_is_indicator() {
        // sum_{d|n} mu(d) = [n = 1] for n <= 10^4
        for n in 1..=10_000u64 {
            let total: i64 = divisors(n)
                .unwrap()
                .iter()
                .map(|&d| mobius(d).unwrap())
                .sum();
            assert_eq!(total, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    #[test]
    fn r3_fermat_obstruction() {
        // r3(n) = 0 exactly when n = 4^a (8m + 7)
        let tab = r3_table(10_000);
        for n in 1..=10_000u64 {
            let mut m = n;
            while m % 4 == 0 {
                m /= 4;
            }
            let excluded = m % 8 == 7;
            assert_eq!(tab[n as usize] == 0, excluded, "n = {n}");
            if n <= 300 {
                assert_eq!(tab[n as usize] as u64, r3(n), "table vs direct at {n}");
            }
        }
    }

    #[test]
    fn r3_known_values() {
        assert_eq!(r3(0), 1);
        assert_eq!(r3(1), 6);
        assert_eq!(r3(2), 12);
        assert_eq!(r3(3), 8);
        assert_eq!(r3(7), 0);
    }

    #[test]
    fn psi_and_lcm_agree() {
        for &n in &[2u64, 10, 30, 100] {
            let psi = chebyshev_psi(n).unwrap();
            let l = lcm_upto(n).unwrap();
            assert!((psi.exp() - l).abs() < 1e-9 * l, "n={n}");
            // p_n <= 3^n
            assert!(l <= 3f64.powi(n as i32));
        }
    }

    #[test]
    fn capacity_error_beyond_hard_cap() {
        assert!(matches!(
            mobius(SIEVE_HARD_CAP + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn mobius_table_matches_pointwise() {
        let tab = mobius_table(500).unwrap();
        for n in 1..=500u64 {
            assert_eq!(tab[n as usize] as i64, mobius(n).unwrap());
        }
    }
}
