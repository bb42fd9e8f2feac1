//! Regenerates the stored group files under `crates/core/data`.
//!
//! ```text
//! cargo run --release -p utlab-core --example derive_data -- crates/core/data
//! ```
//!
//! Every group is computed from scratch and checked by its order:
//! - M11 on 12 points: a transitive subgroup of order 7920 inside M12, found
//!   by random search.
//! - 2^6:G2(2) and 2^6:U3(3) on 64 points: translations of GF(2)^6 extended
//!   by a subgroup of order 12096 of Sp(6,2) (random search) or its derived
//!   subgroup.
//! - HS on 176 points: the Higman–Sims graph on 100 vertices is built from
//!   the Steiner system S(3,6,22) obtained from the binary Golay code, an
//!   automorphism moving the special vertex is found by backtracking, and
//!   U3(5):2 is found as A7 (inside the vertex stabilizer M22) extended by a
//!   random element. HS acts on the 176 images of one U3(5):2-orbital.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use utlab::catalog::{self, GroupFile};
use utlab::{PermGroup, Permutation};

type Rng = ChaCha8Rng;

fn perm(images: impl IntoIterator<Item = usize>) -> Permutation {
    let imgs: Vec<usize> = images.into_iter().map(|x| x + 1).collect();
    Permutation::from_images(&imgs).expect("a permutation")
}

/// A random pair of elements of `group` generating all of it.
fn two_generators(group: &PermGroup, rng: &mut Rng) -> Vec<Permutation> {
    let target = group.order();
    for _ in 0..1000 {
        let pair = vec![group.random_element(rng), group.random_element(rng)];
        let h = PermGroup::new(group.degree(), pair.clone()).unwrap();
        if h.is_transitive() && h.order() == target {
            return pair;
        }
    }
    group.generators().to_vec()
}

fn m11_on_12(rng: &mut Rng) -> PermGroup {
    let m12 = catalog::group("M12@12").unwrap();
    for trial in 1.. {
        let pair = vec![m12.random_element(rng), m12.random_element(rng)];
        let h = PermGroup::new(12, pair).unwrap();
        if h.is_transitive() && h.order_u64() == Some(7920) {
            eprintln!("M11@12 after {trial} trials");
            return h;
        }
    }
    unreachable!()
}

fn translations64() -> Vec<Permutation> {
    (0..6).map(|i| perm((0..64).map(|x| x ^ (1 << i)))).collect()
}

fn affine64(rng: &mut Rng) -> (PermGroup, PermGroup) {
    let sp = PermGroup::new(64, catalog::constructions::sp62_on_vectors()).unwrap();
    let g2 = (1..)
        .find_map(|trial| {
            let pair = vec![sp.random_element(rng), sp.random_element(rng)];
            let h = PermGroup::new(64, pair).unwrap();
            (h.order_u64() == Some(12096)).then(|| {
                eprintln!("G2(2) after {trial} trials");
                h
            })
        })
        .unwrap();
    let u33 = g2.derived_subgroup().unwrap();
    assert_eq!(u33.order_u64(), Some(6048));
    let mut extend = |h: &PermGroup| {
        let mut gens = translations64();
        gens.extend(h.generators().iter().cloned());
        let g = PermGroup::new(64, gens).unwrap();
        assert_eq!(g.order_u64(), Some(64 * h.order_u64().unwrap()));
        let g = PermGroup::new(64, two_generators(&g, rng)).unwrap();
        assert_eq!(g.order_u64(), Some(64 * h.order_u64().unwrap()));
        g
    };
    (extend(&g2), extend(&u33))
}

// ---- Golay code, M24, S(3,6,22) ----

const INF: usize = 23;

fn golay_octads() -> Vec<u32> {
    let p = 23usize;
    let squares: Vec<bool> = {
        let mut s = vec![false; p];
        for x in 1..p {
            s[x * x % p] = true;
        }
        s
    };
    // cyclic shifts of the quadratic-residue vector with 0, extended by parity
    for with_zero in [true, false] {
        let base: Vec<usize> = (0..p).filter(|&x| squares[x] || (with_zero && x == 0)).collect();
        let mut rows: Vec<u32> = (0..p)
            .map(|a| {
                let w: u32 = base.iter().map(|&x| 1u32 << ((x + a) % p)).sum();
                if w.count_ones() % 2 == 1 {
                    w | 1 << INF
                } else {
                    w
                }
            })
            .collect();
        // row reduce
        let mut basis: Vec<u32> = Vec::new();
        for r in rows.drain(..) {
            let mut r = r;
            for &b in &basis {
                let top = 31 - b.leading_zeros();
                if r >> top & 1 == 1 {
                    r ^= b;
                }
            }
            if r != 0 {
                basis.push(r);
                basis.sort_unstable_by(|a, b| b.cmp(a));
                // keep fully reduced
                for i in 0..basis.len() {
                    let top = 31 - basis[i].leading_zeros();
                    for j in 0..basis.len() {
                        if i != j && basis[j] >> top & 1 == 1 {
                            basis[j] ^= basis[i];
                        }
                    }
                }
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        if basis.len() != 12 {
            continue;
        }
        let mut octads = Vec::new();
        for mask in 0u32..1 << 12 {
            let w = (0..12)
                .filter(|i| mask >> i & 1 == 1)
                .fold(0u32, |acc, i| acc ^ basis[i]);
            if w.count_ones() == 8 {
                octads.push(w);
            }
        }
        if octads.len() == 759 {
            octads.sort_unstable();
            return octads;
        }
    }
    panic!("no Golay code found");
}

fn map_set(set: u32, g: &Permutation) -> u32 {
    (0..24)
        .filter(|&x| set >> x & 1 == 1)
        .map(|x| 1u32 << (g.image(x + 1) - 1))
        .sum()
}

fn preserves(octads: &[u32], g: &Permutation) -> bool {
    octads.iter().all(|&o| octads.binary_search(&map_set(o, g)).is_ok())
}

fn m24(octads: &[u32]) -> PermGroup {
    let p = 23usize;
    let inv = |x: usize| (1..p).find(|&y| x * y % p == 1).unwrap();
    let on_line = |f: &dyn Fn(usize) -> usize| perm((0..24).map(f));
    let s = on_line(&|x| if x == INF { INF } else { (x + 1) % p });
    let t = on_line(&|x| if x == INF { INF } else { 2 * x % p });
    let u = on_line(&|x| match x {
        INF => 0,
        0 => INF,
        _ => (p - inv(x)) % p,
    });
    for g in [&s, &t, &u] {
        assert!(preserves(octads, g), "PSL(2,23) generator moves an octad");
    }
    let square: Vec<bool> = (0..p).map(|x| (1..p).any(|y| y * y % p == x)).collect();
    for a in 1..p {
        for b in 1..p {
            let images: Vec<usize> = (0..24)
                .map(|x| {
                    if x == INF || x == 0 {
                        x
                    } else {
                        let c = x * x % p * x % p;
                        if square[x] {
                            a * c % p
                        } else {
                            b * c % p
                        }
                    }
                })
                .collect();
            let mut seen = [false; 24];
            if !images.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                continue;
            }
            let d = perm(images);
            if !preserves(octads, &d) {
                continue;
            }
            let g = PermGroup::new(24, vec![s.clone(), t.clone(), u.clone(), d]).unwrap();
            if g.order_u64() == Some(244_823_040) {
                return g;
            }
        }
    }
    panic!("M24 not found");
}

/// HS on the 100 vertices of its graph, with the stabilizer M22 of vertex 0.
fn higman_sims_100() -> (PermGroup, PermGroup) {
    let octads = golay_octads();
    let m24 = m24(&octads);
    // pointwise stabilizer of the first two points
    let m22_gens = m24.stab_chain().stabilizer_generators(2);
    let m22 = PermGroup::new(24, m22_gens).unwrap();
    assert_eq!(m22.order_u64(), Some(443_520));
    let hexads: Vec<u32> = octads
        .iter()
        .filter(|&&o| o & 3 == 3)
        .map(|&o| o >> 2)
        .collect();
    assert_eq!(hexads.len(), 77);
    let hexad_index: FxHashMap<u32, usize> = hexads.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    // vertex 0 = special, 1..=22 = points, 23.. = hexads
    let n = 100;
    let mut adj = vec![vec![false; n]; n];
    let mut link = |a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    for i in 0..22 {
        link(0, 1 + i);
    }
    for (j, &h) in hexads.iter().enumerate() {
        for i in 0..22 {
            if h >> i & 1 == 1 {
                link(1 + i, 23 + j);
            }
        }
        for (l, &h2) in hexads.iter().enumerate().skip(j + 1) {
            if h & h2 == 0 {
                link(23 + j, 23 + l);
            }
        }
    }
    let srg = (0..n).all(|v| adj[v].iter().filter(|&&e| e).count() == 22);
    assert!(srg, "not 22-regular");
    let lift = |g: &Permutation| {
        perm((0..n).map(|v| match v {
            0 => 0,
            1..=22 => g.image(v + 2) - 2,
            _ => {
                let h = hexads[v - 23];
                let img: u32 = (0..22)
                    .filter(|&i| h >> i & 1 == 1)
                    .map(|i| 1u32 << (g.image(i + 3) - 3))
                    .sum();
                23 + hexad_index[&img]
            }
        }))
    };
    let mut gens: Vec<Permutation> = m22.generators().iter().map(lift).collect();
    let m22 = PermGroup::new(n, gens.clone()).unwrap();
    gens.push(automorphism_moving_zero(&adj));
    let aut = PermGroup::new(n, gens).unwrap();
    let o = aut.order_u64().unwrap();
    let hs = if o == 88_704_000 {
        aut.derived_subgroup().unwrap()
    } else {
        aut
    };
    assert_eq!(hs.order_u64(), Some(44_352_000));
    (hs, m22)
}

/// A graph automorphism sending vertex 0 to vertex 1. Backtracking over
/// partial maps; every unassigned vertex is classified by its adjacency to
/// the assigned ones, and each class must have as many candidate images as
/// members.
fn automorphism_moving_zero(adj: &[Vec<bool>]) -> Permutation {
    fn search(adj: &[Vec<bool>], pairs: &mut Vec<(usize, usize)>) -> Option<Vec<usize>> {
        let n = adj.len();
        if pairs.len() == n {
            let mut image = vec![0; n];
            for &(v, w) in pairs.iter() {
                image[v] = w;
            }
            return Some(image);
        }
        let mut done_v = vec![false; n];
        let mut done_w = vec![false; n];
        for &(v, w) in pairs.iter() {
            done_v[v] = true;
            done_w[w] = true;
        }
        let signature = |x: usize, image_side: bool| -> u128 {
            pairs.iter().enumerate().fold(0u128, |acc, (i, &(v, w))| {
                let y = if image_side { w } else { v };
                acc | (adj[x][y] as u128) << i
            })
        };
        let mut classes: FxHashMap<u128, (Vec<usize>, Vec<usize>)> = FxHashMap::default();
        for x in 0..n {
            if !done_v[x] {
                classes.entry(signature(x, false)).or_default().0.push(x);
            }
            if !done_w[x] {
                classes.entry(signature(x, true)).or_default().1.push(x);
            }
        }
        if classes.values().any(|(vs, ws)| vs.len() != ws.len()) {
            return None;
        }
        let (vs, ws) = classes.into_values().min_by_key(|(vs, _)| vs.len()).unwrap();
        let v = vs[0];
        for w in ws {
            pairs.push((v, w));
            if let Some(image) = search(adj, pairs) {
                return Some(image);
            }
            pairs.pop();
        }
        None
    }
    let image = search(adj, &mut vec![(0, 1)]).expect("an automorphism");
    perm(image)
}


/// Sorted orbit of the arc `(a, b)` under the group generated by `gens`.
fn arc_orbit(gens: &[Permutation], a: usize, b: usize) -> Vec<(usize, usize)> {
    let mut seen = rustc_hash::FxHashSet::default();
    seen.insert((a, b));
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let arc = (g.image(x), g.image(y));
            if seen.insert(arc) {
                queue.push(arc);
            }
        }
    }
    let mut arcs: Vec<_> = seen.into_iter().collect();
    arcs.sort_unstable();
    arcs
}

fn higman_sims_176(rng: &mut Rng) -> PermGroup {
    let (hs, m22) = higman_sims_100();
    // A7 < M22 with orbits of sizes 7 and 15 on the neighbours of vertex 1
    let (a7, seven) = (1..)
        .find_map(|_| {
            let pair = vec![m22.random_element(rng), m22.random_element(rng)];
            let h = PermGroup::new(100, pair).unwrap();
            let orbits = h.orbits_on_points();
            let seven = orbits.iter().find(|o| o.len() == 7 && o[0] <= 23)?.clone();
            let fifteen = orbits.iter().any(|o| o.len() == 15 && o[0] <= 23);
            (fifteen && h.order_u64() == Some(2520)).then_some((h, seven))
        })
        .unwrap();
    // U3(5):2 = <A7, g>: it has an orbital of 700 arcs where HS has 2200
    let (sub, arcs) = (1..)
        .find_map(|_| {
            let mut gens = a7.generators().to_vec();
            gens.push(hs.random_element(rng));
            let arcs = arc_orbit(&gens, 1, seven[0]);
            if arcs.len() >= 2200 {
                return None;
            }
            let h = PermGroup::new(100, gens).unwrap();
            (h.order_u64() == Some(252_000)).then_some((h, arcs))
        })
        .unwrap();
    assert!(sub.is_transitive());
    // HS acts on the images of that orbital
    let mut objects = vec![arcs.clone()];
    let mut index: FxHashMap<Vec<(usize, usize)>, usize> = FxHashMap::default();
    index.insert(arcs, 0);
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); hs.generators().len()];
    let mut head = 0;
    while head < objects.len() {
        for (gi, g) in hs.generators().iter().enumerate() {
            let mut img: Vec<_> = objects[head].iter().map(|&(x, y)| (g.image(x), g.image(y))).collect();
            img.sort_unstable();
            let next = objects.len();
            let id = *index.entry(img.clone()).or_insert(next);
            if id == next {
                objects.push(img);
            }
            images[gi].push(id);
        }
        head += 1;
    }
    assert_eq!(objects.len(), 176);
    let gens: Vec<Permutation> = images.into_iter().map(perm).collect();
    let g = PermGroup::new(176, gens).unwrap();
    assert_eq!(g.order_u64(), Some(44_352_000));
    let g = PermGroup::new(176, two_generators(&g, rng)).unwrap();
    assert_eq!(g.order_u64(), Some(44_352_000));
    g
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/core/data".into()));
    let only = std::env::args().nth(2);
    let want = |name: &str| only.as_deref().is_none_or(|o| o == name);
    let mut rng = Rng::seed_from_u64(2024);
    let write = |file: &str, text: String| {
        std::fs::write(dir.join(file), text).expect("write group file");
        eprintln!("wrote {file}");
    };
    if want("m11") {
        let g = m11_on_12(&mut rng);
        let g = PermGroup::new(12, two_generators(&g, &mut rng)).unwrap();
        write(
            "m11_12.grp",
            GroupFile::render(
                "M11",
                &g,
                &["Mathieu group M11 acting transitively on 12 points,", "found as a subgroup of M12."],
            ),
        );
    }
    if want("affine64") {
        let (g2, u33) = affine64(&mut rng);
        write(
            "g2_64.grp",
            GroupFile::render("2^6:G2(2)", &g2, &["Translations of GF(2)^6 extended by G2(2) < Sp(6,2)."]),
        );
        write(
            "u33_64.grp",
            GroupFile::render(
                "2^6:U3(3)",
                &u33,
                &["Index-2 subgroup of 2^6:G2(2): translations extended by U3(3) = G2(2)'."],
            ),
        );
    }
    if want("hs") {
        let g = higman_sims_176(&mut rng);
        write(
            "hs_176.grp",
            GroupFile::render(
                "HS",
                &g,
                &["Higman-Sims group on the cosets of U3(5):2, realised as the", "images of an orbital of U3(5):2 on the Higman-Sims graph."],
            ),
        );
    }
}
