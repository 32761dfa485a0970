//! Permutations of `{1..n}` stored as image vectors: `p[k-1]` is the image of `k`.

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| {
        v >= 1 && v <= p.len() && !std::mem::replace(&mut seen[v - 1], true)
    })
}

pub fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// `(a ∘ b)(k) = a(b(k))`.
pub fn then(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&k| a[k - 1]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        q[v - 1] = k + 1;
    }
    q
}

/// All of `S_n` in lexicographic order.
pub fn all(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_sizes() {
        for n in 0..=5 {
            let ps = all(n);
            assert_eq!(ps.len() as u64, factorial(n));
            assert!(ps.iter().all(|p| is_perm(p)));
        }
    }

    #[test]
    fn inverse_and_composition() {
        let p = vec![2, 3, 1];
        assert_eq!(then(&p, &inverse(&p)), identity(3));
        assert_eq!(then(&inverse(&p), &p), identity(3));
        assert!(!is_perm(&[1, 1]));
        assert!(!is_perm(&[0, 1]));
    }
}
