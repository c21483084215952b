//! Levi-Civita tables with `ε^{01} = ε^{123} = ε^{0123} = +1`.

use std::sync::OnceLock;

/// A nonzero entry of `ε`: the index permutation and its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonEntry {
    pub perm: [usize; 4],
    pub sign: f64,
}

fn generate(n: usize) -> Vec<EpsilonEntry> {
    // Heap's algorithm; each swap flips the parity.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1.0;
    let mut out = Vec::new();
    let push = |p: &[usize], s: f64, out: &mut Vec<EpsilonEntry>| {
        let mut arr = [0; 4];
        arr[..p.len()].copy_from_slice(p);
        out.push(EpsilonEntry { perm: arr, sign: s });
    };
    push(&perm, sign, &mut out);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            push(&perm, sign, &mut out);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

/// All `n!` nonzero entries of the rank-`n` Levi-Civita symbol, `n ≤ 4`.
pub fn epsilon_table(n: usize) -> &'static [EpsilonEntry] {
    static TABLES: OnceLock<[Vec<EpsilonEntry>; 5]> = OnceLock::new();
    assert!(n <= 4, "Levi-Civita tables are built up to rank 4");
    &TABLES.get_or_init(|| std::array::from_fn(generate))[n]
}

/// Index pairs `(μ, ν)` with `μ < ν` in storage order.
pub fn index_pairs(dim: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(dim * (dim - 1) / 2);
    for mu in 0..dim {
        for nu in mu + 1..dim {
            out.push((mu, nu));
        }
    }
    out
}

/// Storage slot and sign of the antisymmetric pair `(μ, ν)`; `None` on the
/// diagonal.
pub fn pair_slot(dim: usize, mu: usize, nu: usize) -> Option<(usize, f64)> {
    if mu == nu {
        return None;
    }
    let (lo, hi, sign) = if mu < nu { (mu, nu, 1.0) } else { (nu, mu, -1.0) };
    // pairs before row `lo`: Σ_{r<lo} (dim - 1 - r)
    let offset = lo * (2 * dim - lo - 1) / 2;
    Some((offset + hi - lo - 1, sign))
}
