use crate::error::{Error, Result};
use crate::poset::{Poset, PosetBuilder};

/// Covers of the nine-point space `L = W_1` in the numbering `x_1 … x_9`.
/// `x_9` is where the next copy is attached; `x_8` is its weak point.
pub const W_BASE_COVERS: [(usize, usize); 13] = [
    (1, 3),
    (2, 3),
    (1, 9),
    (8, 9),
    (2, 7),
    (8, 7),
    (3, 4),
    (9, 4),
    (3, 6),
    (7, 6),
    (3, 5),
    (9, 5),
    (7, 5),
];

/// Local position `k` (1..=9) of the even copies, i.e. the point of `L^op`
/// that plays `x_{8+k}`: entries are indices `1..=9` of `L`.
const DUAL_POSITIONS: [usize; 9] = [1, 2, 3, 9, 4, 7, 6, 8, 5];

/// Covers of `W_n` on points `1 ..= 8n+1`. Odd copies are `L` shifted by a
/// multiple of 16; even copies are `L^op`, entered at the image of `x_1` and
/// left at the image of `x_5`.
fn w_covers(n: usize) -> Vec<(usize, usize)> {
    let mut dual_slot = [0usize; 10];
    for (k, &e) in DUAL_POSITIONS.iter().enumerate() {
        dual_slot[e] = k + 1;
    }
    let mut out = Vec::new();
    for copy in 0..n {
        let offset = 8 * copy;
        for &(a, b) in &W_BASE_COVERS {
            if copy % 2 == 0 {
                out.push((a + offset, b + offset));
            } else {
                out.push((dual_slot[b] + offset, dual_slot[a] + offset));
            }
        }
    }
    out
}

/// `W_n`: `n` copies of the nine-point space chained at `x_9, x_17, …`;
/// `8n + 1` points labeled `x_1 …`.
pub fn build_w(n: usize) -> Result<Poset> {
    w_copy(n, "")
}

/// `W_n` with every label suffixed, e.g. `x_3@Wcopy_2` for suffix `@Wcopy_2`.
pub fn w_copy(n: usize, suffix: &str) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidInput("W_n needs n ≥ 1".into()));
    }
    let mut b = PosetBuilder::new();
    for i in 1..=8 * n + 1 {
        b.point(format!("x_{i}{suffix}"));
    }
    for (a, c) in w_covers(n) {
        b.cover(format!("x_{a}{suffix}"), format!("x_{c}{suffix}"));
    }
    b.build()
}
