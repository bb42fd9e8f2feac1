//! Generator constructions for the group families in the catalog.

use rustc_hash::FxHashMap;

use super::field::Field;
use crate::error::{invalid, Result};
use crate::perm::{PermGroup, Permutation};

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    let images: Vec<usize> = (0..n).map(|x| f(x) + 1).collect();
    Permutation::from_images(&images).expect("construction yields a bijection")
}

pub fn cyclic(n: usize) -> Vec<Permutation> {
    vec![perm_from_fn(n, |x| (x + 1) % n)]
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> Vec<Permutation> {
    vec![
        perm_from_fn(n, |x| (x + 1) % n),
        perm_from_fn(n, |x| (n - x) % n),
    ]
}

pub fn symmetric(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    vec![
        perm_from_fn(n, |x| (x + 1) % n),
        perm_from_fn(n, |x| match x {
            0 => 1,
            1 => 0,
            _ => x,
        }),
    ]
}

/// Generated by the 3-cycles `(1,2,i)`.
pub fn alternating(n: usize) -> Vec<Permutation> {
    if n < 3 {
        return vec![Permutation::identity(n)];
    }
    (3..=n)
        .map(|i| Permutation::from_cycles(n, &[vec![1, 2, i]]).expect("valid cycle"))
        .collect()
}

/// Maps `x ↦ a x + b` (optionally composed with a field automorphism) on
/// GF(q), element `i` labelled as point `i+1`.
///
/// The multiplicative part is generated by `ω^mult_step`; with `frobenius`
/// the map `x ↦ x^p` is adjoined.
pub fn affine1(field: &Field, mult_step: u32, frobenius: bool) -> Vec<Permutation> {
    let q = field.order() as usize;
    let mut gens: Vec<Permutation> = (0..field.degree())
        .map(|j| {
            let b = field.basis(j);
            perm_from_fn(q, |x| field.add(x as u16, b) as usize)
        })
        .collect();
    let a = field.pow(field.primitive(), mult_step as u64);
    if a != 1 {
        gens.push(perm_from_fn(q, |x| field.mul(a, x as u16) as usize));
    }
    if frobenius && field.degree() > 1 {
        gens.push(perm_from_fn(q, |x| field.frobenius(x as u16) as usize));
    }
    gens
}

/// A `d × d` matrix over GF(p), row-major.
type Matrix = Vec<Vec<u32>>;

fn vec_index(v: &[u32], p: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

fn index_vec(mut x: usize, d: usize, p: u32) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let r = (x % p as usize) as u32;
            x /= p as usize;
            r
        })
        .collect()
}

fn apply(m: &Matrix, v: &[u32], p: u32) -> Vec<u32> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % p)
        .collect()
}

fn linear_perm(m: &Matrix, d: usize, p: u32) -> Permutation {
    let n = (p as usize).pow(d as u32);
    perm_from_fn(n, |x| vec_index(&apply(m, &index_vec(x, d, p), p), p))
}

fn translation(t: &[u32], d: usize, p: u32) -> Permutation {
    let n = (p as usize).pow(d as u32);
    perm_from_fn(n, |x| {
        let v: Vec<u32> = index_vec(x, d, p)
            .iter()
            .zip(t)
            .map(|(a, b)| (a + b) % p)
            .collect();
        vec_index(&v, p)
    })
}

fn identity_matrix(d: usize) -> Matrix {
    (0..d)
        .map(|i| (0..d).map(|j| u32::from(i == j)).collect())
        .collect()
}

fn transvections(d: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut m = identity_matrix(d);
                m[i][j] = 1;
                out.push(m);
            }
        }
    }
    out
}

/// Affine group on GF(p)^d with linear part SL(d,p) (`special`) or GL(d,p).
/// Vector `v` is labelled `1 + Σ v_j p^j`.
pub fn affine(d: usize, p: u32, special: bool) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = (0..d)
        .map(|j| {
            let mut t = vec![0u32; d];
            t[j] = 1;
            translation(&t, d, p)
        })
        .collect();
    gens.extend(transvections(d).iter().map(|m| linear_perm(m, d, p)));
    if !special && p > 2 {
        let omega = (2..p)
            .find(|&w| (1..p - 1).all(|k| pow_mod(w, k, p) != 1))
            .unwrap_or(1);
        let mut m = identity_matrix(d);
        m[0][0] = omega;
        gens.push(linear_perm(&m, d, p));
    }
    gens
}

fn pow_mod(a: u32, k: u32, p: u32) -> u32 {
    (0..k).fold(1u32, |acc, _| acc * a % p)
}

/// 3²:Q8 on GF(3)², the quaternion part generated by `[[0,−1],[1,0]]` and
/// `[[1,1],[1,−1]]`.
pub fn m9() -> Vec<Permutation> {
    let mut gens = vec![translation(&[1, 0], 2, 3), translation(&[0, 1], 2, 3)];
    gens.push(linear_perm(&vec![vec![0, 2], vec![1, 0]], 2, 3));
    gens.push(linear_perm(&vec![vec![1, 1], vec![1, 2]], 2, 3));
    gens
}

/// PSL(3,2) on the seven nonzero vectors of GF(2)³; vector `v` is point `v`.
pub fn fano() -> Vec<Permutation> {
    transvections(3)
        .iter()
        .map(|m| {
            perm_from_fn(7, |x| vec_index(&apply(m, &index_vec(x + 1, 3, 2), 2), 2) - 1)
        })
        .collect()
}

/// The lines of the Fano plane in the labelling of [`fano`].
pub fn fano_lines() -> Vec<[usize; 3]> {
    let mut lines = Vec::new();
    for a in 1..8usize {
        for b in a + 1..8 {
            let c = a ^ b;
            if c > b {
                lines.push([a, b, c]);
            }
        }
    }
    lines
}

/// Action of S_5 (or A_5) on the ten 2-subsets of {1..5}, labelled in
/// lexicographic order.
pub fn on_pairs(alternating: bool) -> Vec<Permutation> {
    let pairs: Vec<(usize, usize)> = (1..=5)
        .flat_map(|a| (a + 1..=5).map(move |b| (a, b)))
        .collect();
    let index: FxHashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let base = if alternating {
        vec![
            Permutation::parse_cycles(5, "(1,2,3)").unwrap(),
            Permutation::parse_cycles(5, "(1,2,3,4,5)").unwrap(),
        ]
    } else {
        symmetric(5)
    };
    base.iter()
        .map(|g| {
            perm_from_fn(10, |x| {
                let (a, b) = pairs[x];
                let (u, v) = (g.image(a), g.image(b));
                index[&(u.min(v), u.max(v))]
            })
        })
        .collect()
}

/// Level of a group between PSL(2,q) and PΓL(2,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectiveLevel {
    Psl,
    Pgl,
    PSigmaL,
    PGammaL,
}

/// A map of the projective line GF(q) ∪ {∞}; element `i` is point `i+1`,
/// `∞` is point `q+1`.
fn projective_perm(field: &Field, f: impl Fn(Option<u16>) -> Option<u16>) -> Permutation {
    let q = field.order() as usize;
    perm_from_fn(q + 1, |x| {
        let pt = (x < q).then_some(x as u16);
        f(pt).map_or(q, |y| y as usize)
    })
}

fn mobius(field: &Field, a: u16, b: u16, c: u16, d: u16) -> Permutation {
    projective_perm(field, |x| match x {
        None => (c != 0).then(|| field.mul(a, field.inv(c))),
        Some(x) => {
            let den = field.add(field.mul(c, x), d);
            (den != 0).then(|| field.mul(field.add(field.mul(a, x), b), field.inv(den)))
        }
    })
}

/// Generators of the given level on the projective line over `field`:
/// `x+1`, `ω²x`, `−1/x`, plus `ωx` for PGL/PΓL and `x^p` for PΣL/PΓL.
pub fn projective_line(field: &Field, level: ProjectiveLevel) -> Vec<Permutation> {
    let w = field.primitive();
    let one = 1u16;
    let mut gens = vec![
        mobius(field, one, one, 0, one),
        mobius(field, field.mul(w, w), 0, 0, one),
        mobius(field, 0, field.neg(one), one, 0),
    ];
    if matches!(level, ProjectiveLevel::Pgl | ProjectiveLevel::PGammaL) {
        gens.push(mobius(field, w, 0, 0, one));
    }
    if matches!(level, ProjectiveLevel::PSigmaL | ProjectiveLevel::PGammaL) && field.degree() > 1 {
        gens.push(projective_perm(field, |x| x.map(|x| field.frobenius(x))));
    }
    gens
}

/// PSL(2,9) extended by `x ↦ ω x³`.
pub fn m10(field: &Field) -> Result<Vec<Permutation>> {
    if field.order() != 9 {
        return Err(invalid("M10 is built over GF(9)"));
    }
    let mut gens = projective_line(field, ProjectiveLevel::Psl);
    let w = field.primitive();
    gens.push(projective_perm(field, |x| {
        x.map(|x| field.mul(w, field.frobenius(x)))
    }));
    Ok(gens)
}

/// Symplectic form on GF(2)^6 with hyperbolic pairs (0,1), (2,3), (4,5).
fn symplectic_form(x: u8, y: u8) -> u8 {
    let mut s = 0;
    for i in [0, 2, 4] {
        let (x0, x1) = ((x >> i) & 1, (x >> (i + 1)) & 1);
        let (y0, y1) = ((y >> i) & 1, (y >> (i + 1)) & 1);
        s ^= (x0 & y1) ^ (x1 & y0);
    }
    s
}

fn transvection6(v: u8) -> Permutation {
    perm_from_fn(64, |x| {
        let x = x as u8;
        (if symplectic_form(x, v) == 1 { x ^ v } else { x }) as usize
    })
}

/// Order of Sp(6,2).
pub const SP62_ORDER: u64 = 1_451_520;

/// Symplectic transvections generating Sp(6,2) on the 64 vectors of
/// GF(2)^6 (vector `v` is point `v+1`), chosen greedily in order of `v`.
pub fn sp62_on_vectors() -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = 1u64;
    for v in 1..64u8 {
        let t = transvection6(v);
        let mut trial = gens.clone();
        trial.push(t);
        let o = PermGroup::new(64, trial.clone())
            .expect("valid generators")
            .order_u64()
            .expect("fits");
        if o > order {
            gens = trial;
            order = o;
            if order == SP62_ORDER {
                break;
            }
        }
    }
    debug_assert_eq!(order, SP62_ORDER);
    gens
}

/// Truth table (bit `x` = value at `x`) of `Q0 + B(a, ·)` where
/// `Q0 = x0x1 + x2x3 + x4x5`.
fn quadratic_form(a: u8) -> u64 {
    let mut t = 0u64;
    for x in 0..64u8 {
        let q0 = ((x & 1) & ((x >> 1) & 1)) ^ (((x >> 2) & 1) & ((x >> 3) & 1)) ^ (((x >> 4) & 1) & ((x >> 5) & 1));
        if q0 ^ symplectic_form(a, x) == 1 {
            t |= 1 << x;
        }
    }
    t
}

/// Sp(6,2) on its quadratic forms of one type: 28 of minus type (`plus =
/// false`) or 36 of plus type. Forms are labelled in increasing order of `a`.
pub fn sp62_on_forms(plus: bool) -> Vec<Permutation> {
    let forms: Vec<u64> = (0..64u8)
        .map(quadratic_form)
        .filter(|t| {
            let zeros = 64 - t.count_ones();
            (zeros == 36) == plus
        })
        .collect();
    let index: FxHashMap<u64, usize> = forms.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    sp62_on_vectors()
        .iter()
        .map(|g| {
            perm_from_fn(forms.len(), |i| {
                // (Q∘g)(x) = Q(g(x))
                let t = forms[i];
                let mut img = 0u64;
                for x in 0..64usize {
                    if (t >> g.img0(x)) & 1 == 1 {
                        img |= 1 << x;
                    }
                }
                index[&img]
            })
        })
        .collect()
}
