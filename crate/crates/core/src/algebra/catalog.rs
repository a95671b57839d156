//! Built-in small groups.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::group::FiniteGroup;

fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(&rows).expect("catalog table is a group")
}

/// ℤ/nℤ under addition.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    from_fn(n, |a, b| (a + b) % n)
}

/// `G × H`, element `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    from_fn(g.order() * m, |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
}

/// S₃ as permutations of {0,1,2} in lexicographic order, `(σ·τ)(x) = σ(τ(x))`.
pub fn symmetric3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let g = from_fn(6, |a, b| {
        let (s, t) = (perms[a], perms[b]);
        index([s[t[0]], s[t[1]], s[t[2]]])
    });
    let names = perms
        .iter()
        .map(|p| p.iter().map(|i| char::from(b'0' + *i as u8)).collect::<String>())
        .collect();
    g.with_names(names).unwrap()
}

/// The dihedral group of order `2n`; `r^i s^j` at index `i + n·j`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let g = from_fn(2 * n, |x, y| {
        let (i, a) = (x % n, x / n);
        let (j, b) = (y % n, y / n);
        let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
        rot + n * ((a + b) % 2)
    });
    let names = (0..2 * n)
        .map(|x| {
            let mut s = alloc::format!("r{}", x % n);
            if x >= n {
                s.push('s');
            }
            s
        })
        .collect();
    g.with_names(names).unwrap()
}

/// Q₈ with elements `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteGroup {
    // unit products on basis 1,i,j,k as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let g = from_fn(8, |x, y| {
        let (ux, nx) = (x / 2, x % 2 == 1);
        let (uy, ny) = (y / 2, y % 2 == 1);
        let (neg, u) = UNIT[ux][uy];
        2 * u + usize::from(neg ^ nx ^ ny)
    });
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    g.with_names(names).unwrap()
}

/// The shipped catalog: ℤ/n for n ≤ 8, ℤ2×ℤ2, ℤ2×ℤ4, ℤ2³, S₃, D₄, Q₈.
pub fn catalog() -> Vec<(&'static str, FiniteGroup)> {
    let z2 = cyclic(2);
    let mut out: Vec<(&'static str, FiniteGroup)> = Vec::new();
    const CYCLIC: [&str; 8] = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8"];
    for (i, name) in CYCLIC.iter().enumerate() {
        out.push((name, cyclic(i + 1)));
    }
    out.push(("Z2xZ2", direct_product(&z2, &z2)));
    out.push(("Z2xZ4", direct_product(&z2, &cyclic(4))));
    out.push(("Z2^3", direct_product(&direct_product(&z2, &z2), &z2)));
    out.push(("S3", symmetric3()));
    out.push(("D4", dihedral(4)));
    out.push(("Q8", quaternion()));
    out
}

/// Looks up a catalog group by name.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    catalog().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}
