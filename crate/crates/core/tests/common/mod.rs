//! Independent oracles: explicit enumeration of partitions and a direct
//! product expansion, sharing no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;

/// Every partition of `n` as a nonincreasing list of parts.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Two-colored partitions of `n` whose second color uses only even parts.
pub fn cubic_partition_count(n: u32) -> u64 {
    let mut total = 0u64;
    for second in (0..=n).step_by(2) {
        let first = partitions(n - second).len() as u64;
        let evens = partitions(second)
            .iter()
            .filter(|p| p.iter().all(|part| part % 2 == 0))
            .count() as u64;
        total += first * evens;
    }
    total
}

/// True if no cell of the Young diagram has a hook length divisible by `t`.
pub fn is_t_core(partition: &[u32], t: u32) -> bool {
    let rows = partition.len();
    for (i, &row) in partition.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = partition[i + 1..rows]
                .iter()
                .filter(|&&r| r as usize > j)
                .count();
            if ((arm + leg + 1) as u32).is_multiple_of(t) {
                return false;
            }
        }
    }
    true
}

pub fn core_count(n: u32, t: u32) -> u64 {
    partitions(n).iter().filter(|p| is_t_core(p, t)).count() as u64
}

/// Coefficients below `order` of `prod_{n>=1} (1 - q^(m n))`, multiplying
/// in one binomial at a time. Partial products have large coefficients even
/// though the full product does not, hence big integers.
pub fn euler_product(m: usize, order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); order];
    if order == 0 {
        return c;
    }
    c[0] = BigInt::from(1);
    let mut k = m;
    while k < order {
        for e in (k..order).rev() {
            let lower = c[e - k].clone();
            c[e] -= lower;
        }
        k += m;
    }
    c
}
