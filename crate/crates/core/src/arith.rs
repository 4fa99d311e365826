//! Mobius and Liouville sieves and the two weighted-average statistics the
//! experiments rest on: averages of mu against eventually periodic sequences
//! and averages of gap-supported sequences.

use crate::error::{Error, Result};

/// Compensated (Kahan) accumulator. Million-term sums of unit-sized values
/// stay near machine precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}

/// Precomputed mu and lambda values for 1..=n.
#[derive(Debug, Clone)]
pub struct SieveTable {
    n: u64,
    mu: Vec<i8>,
    lambda: Vec<i8>,
}

/// Linear sieve for mu and lambda.
pub fn sieve(n: u64) -> Result<SieveTable> {
    if n == 0 {
        return Err(Error::domain("sieve bound must be at least 1"));
    }
    let len = n as usize + 1;
    let mut mu = vec![0i8; len];
    let mut lambda = vec![0i8; len];
    let mut is_comp = vec![false; len];
    let mut primes: Vec<usize> = Vec::new();
    mu[1] = 1;
    lambda[1] = 1;
    for i in 2..len {
        if !is_comp[i] {
            primes.push(i);
            mu[i] = -1;
            lambda[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip >= len {
                break;
            }
            is_comp[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                lambda[ip] = -lambda[i];
                break;
            }
            mu[ip] = -mu[i];
            lambda[ip] = -lambda[i];
        }
    }
    Ok(SieveTable { n, mu, lambda })
}

impl SieveTable {
    pub fn bound(&self) -> u64 {
        self.n
    }

    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    pub fn lambda(&self, n: u64) -> i8 {
        self.lambda[n as usize]
    }
}

/// mu by direct trial factorization; the independent cross-check.
pub fn mu_by_factorization(mut n: u64) -> i8 {
    if n == 1 {
        return 1;
    }
    let mut k = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// lambda by direct trial factorization.
pub fn lambda_by_factorization(mut n: u64) -> i8 {
    let mut k = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Mertens partial sum `M(N)`, exact in integers.
pub fn mertens(table: &SieveTable, n: u64) -> Result<i64> {
    if n > table.bound() {
        return Err(Error::domain(format!(
            "mertens({n}) beyond sieve bound {}",
            table.bound()
        )));
    }
    Ok((1..=n).map(|k| table.mu(k) as i64).sum())
}

/// Value of the eventually periodic sequence at 1-based index `n`.
fn ep_value(preperiod: &[f64], cycle: &[f64], n: u64) -> f64 {
    let idx = n as usize - 1;
    if idx < preperiod.len() {
        preperiod[idx]
    } else {
        cycle[(idx - preperiod.len()) % cycle.len()]
    }
}

#[derive(Debug, Clone)]
pub struct EpAverageReport {
    /// (N', average) at each requested checkpoint
    pub checkpoints: Vec<(u64, f64)>,
    pub final_value: f64,
    /// running max of |average| over the last decade of N'
    pub max_last_decade: f64,
}

/// Partial averages `(1/N') sum mu(n) x_n` of an eventually periodic sequence.
pub fn ep_average(
    table: &SieveTable,
    preperiod: &[f64],
    cycle: &[f64],
    n: u64,
    checkpoints: &[u64],
) -> Result<EpAverageReport> {
    if cycle.is_empty() {
        return Err(Error::domain("cycle must be nonempty"));
    }
    if n > table.bound() {
        return Err(Error::domain(format!(
            "N = {n} beyond sieve bound {}",
            table.bound()
        )));
    }
    let mut acc = Kahan::default();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut cp = checkpoints.iter().copied().peekable();
    let decade_start = n / 10;
    let mut max_last_decade: f64 = 0.0;
    let mut final_value = 0.0;
    for m in 1..=n {
        acc.add(table.mu(m) as f64 * ep_value(preperiod, cycle, m));
        let avg = acc.total() / m as f64;
        if m >= decade_start.max(1) {
            max_last_decade = max_last_decade.max(avg.abs());
        }
        while cp.peek() == Some(&m) {
            out.push((m, avg));
            cp.next();
        }
        final_value = avg;
    }
    Ok(EpAverageReport { checkpoints: out, final_value, max_last_decade })
}

/// Weights for the gap-supported average.
#[derive(Debug, Clone, Copy)]
pub enum Weights<'a> {
    Ones,
    Mu(&'a SieveTable),
    Signs(&'a [i8]),
}

impl Weights<'_> {
    fn at(&self, n: u64) -> f64 {
        match self {
            Weights::Ones => 1.0,
            Weights::Mu(t) => t.mu(n) as f64,
            Weights::Signs(w) => w[n as usize - 1] as f64,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HoledAverageReport {
    /// sup over all N' <= N of |(1/N') sum w_n a_n|
    pub running_sup: f64,
    /// the asymptotic gap bound 1/k for comparison
    pub bound: f64,
    pub checkpoints: Vec<(u64, f64)>,
    pub final_value: f64,
}

/// Running statistic of a gap-supported sequence: `a` has values in [0,1]
/// and any two nonzero entries are at least `k` apart (1-based indices).
/// The gap hypothesis is validated first and violations name the pair.
pub fn holed_average(
    weights: Weights,
    a: &[f64],
    k: u64,
    n: u64,
    checkpoints: &[u64],
) -> Result<HoledAverageReport> {
    if k == 0 {
        return Err(Error::domain("gap k must be at least 1"));
    }
    if (n as usize) > a.len() {
        return Err(Error::domain(format!(
            "N = {n} beyond sequence length {}",
            a.len()
        )));
    }
    let mut last_nonzero: Option<u64> = None;
    for idx in 1..=n {
        let v = a[idx as usize - 1];
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::domain(format!(
                "a_{idx} = {v} outside [0,1]"
            )));
        }
        if v != 0.0 {
            if let Some(m) = last_nonzero {
                if idx - m < k {
                    return Err(Error::GapViolation { n: idx, m, k });
                }
            }
            last_nonzero = Some(idx);
        }
    }
    let mut acc = Kahan::default();
    let mut running_sup: f64 = 0.0;
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut cp = checkpoints.iter().copied().peekable();
    let mut final_value = 0.0;
    for m in 1..=n {
        acc.add(weights.at(m) * a[m as usize - 1]);
        let avg = acc.total() / m as f64;
        running_sup = running_sup.max(avg.abs());
        while cp.peek() == Some(&m) {
            out.push((m, avg));
            cp.next();
        }
        final_value = avg;
    }
    Ok(HoledAverageReport {
        running_sup,
        bound: 1.0 / k as f64,
        checkpoints: out,
        final_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_definitional_cases() {
        let t = sieve(20).unwrap();
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.lambda(1), 1);
        // oracle: 12 = 2^2 * 3 and 6 = 2 * 3
        assert_eq!(mu_by_factorization(12), 0);
        assert_eq!(lambda_by_factorization(12), -1);
        assert_eq!(t.mu(12), 0);
        assert_eq!(t.lambda(12), -1);
        assert_eq!(mu_by_factorization(6), 1);
        assert_eq!(t.mu(6), 1);
        assert_eq!(t.lambda(6), 1);
        assert!(sieve(0).is_err());
    }

    #[test]
    fn sieve_matches_factorization_oracle() {
        let t = sieve(2000).unwrap();
        for n in 1..=2000u64 {
            assert_eq!(t.mu(n), mu_by_factorization(n), "mu({n})");
            assert_eq!(t.lambda(n), lambda_by_factorization(n), "lambda({n})");
        }
    }

    #[test]
    fn mertens_small_values() {
        let t = sieve(100).unwrap();
        assert_eq!(mertens(&t, 1).unwrap(), 1);
        assert_eq!(mertens(&t, 2).unwrap(), 0);
        // oracle for N = 10: sum of directly factorized mu(1..10)
        let oracle: i64 = (1..=10).map(|n| mu_by_factorization(n) as i64).sum();
        assert_eq!(oracle, -1);
        assert_eq!(mertens(&t, 10).unwrap(), -1);
        assert!(mertens(&t, 1000).is_err());
    }

    #[test]
    fn ep_average_reductions() {
        let t = sieve(10_000).unwrap();
        // x = 0: every average is 0
        let r = ep_average(&t, &[], &[0.0], 10_000, &[10_000]).unwrap();
        assert_eq!(r.final_value, 0.0);
        // x = 1: average is M(N)/N
        let r = ep_average(&t, &[], &[1.0], 10_000, &[100, 10_000]).unwrap();
        let m = mertens(&t, 10_000).unwrap() as f64 / 10_000.0;
        assert!((r.final_value - m).abs() < 1e-15);
        let m100 = mertens(&t, 100).unwrap() as f64 / 100.0;
        assert!((r.checkpoints[0].1 - m100).abs() < 1e-15);
        assert!(ep_average(&t, &[], &[], 10, &[]).is_err());
    }

    #[test]
    fn ep_average_progression_decomposition() {
        // two evaluation orders must agree: direct summation vs per-residue
        let t = sieve(50_000).unwrap();
        let cycle = [0.3, 1.0, 0.0, 0.7, 0.2];
        let n = 50_000u64;
        let direct = ep_average(&t, &[], &cycle, n, &[]).unwrap().final_value;
        let p = cycle.len() as u64;
        let mut by_residue = 0.0;
        for r in 0..p {
            let mut s = Kahan::default();
            let mut m = r + 1; // indices congruent to r+1 mod p carry cycle[r]
            while m <= n {
                s.add(t.mu(m) as f64);
                m += p;
            }
            by_residue += cycle[r as usize] * s.total() / n as f64;
        }
        assert!((direct - by_residue).abs() < 1e-12);
    }

    #[test]
    fn holed_average_examples() {
        // a_n = 1 iff n = 0 mod 5: averages tend to 1/5, never exceeding
        // 1/5 + 1/N in the finite form
        let n = 10_000usize;
        let a: Vec<f64> = (1..=n).map(|i| if i % 5 == 0 { 1.0 } else { 0.0 }).collect();
        let r = holed_average(Weights::Ones, &a, 5, n as u64, &[]).unwrap();
        assert!((r.final_value - 0.2).abs() < 1e-4);
        assert!(r.running_sup <= 0.2 + 1e-12);
        // zero sequence
        let z = vec![0.0; 100];
        let r = holed_average(Weights::Ones, &z, 7, 100, &[]).unwrap();
        assert_eq!(r.running_sup, 0.0);
    }

    #[test]
    fn holed_average_gap_validation() {
        let mut a = vec![0.0; 100];
        a[9] = 0.5;
        a[12] = 0.5; // indices 10 and 13: gap 3 < 5
        match holed_average(Weights::Ones, &a, 5, 100, &[]) {
            Err(Error::GapViolation { n, m, k }) => {
                assert_eq!((n, m, k), (13, 10, 5));
            }
            other => panic!("expected gap violation, got {other:?}"),
        }
        let mut b = vec![0.0; 50];
        b[3] = 1.5;
        assert!(holed_average(Weights::Ones, &b, 2, 50, &[]).is_err());
    }

    #[test]
    fn holed_average_finite_bound() {
        // gap-k sequences whose first support index is >= k satisfy
        // |avg| <= 1/k at every N
        let k = 7u64;
        let n = 5_000usize;
        let mut a = vec![0.0; n];
        let mut idx = k as usize;
        let mut x = 0.37;
        while idx <= n {
            x = (x * 997.0).fract();
            a[idx - 1] = x;
            idx += k as usize + (idx % 3);
        }
        let r = holed_average(Weights::Ones, &a, k, n as u64, &[]).unwrap();
        assert!(r.running_sup <= 1.0 / k as f64 + 1e-12);
    }
}
