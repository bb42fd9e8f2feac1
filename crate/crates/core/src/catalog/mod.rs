//! Named groups: constructors for the classical families and stored
//! generator data for the sporadic and exceptional ones.
//!
//! Groups are addressed as `NAME` or `NAME@DEGREE`, e.g. `AGL(1,7)`,
//! `PGammaL(2,8)`, `M11@12`. Greek letters are accepted (`PΓL(2,8)`).

pub mod constructions;
pub mod field;
pub mod groupfile;

use std::path::PathBuf;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::num_theory::is_prime;
use crate::perm::PermGroup;
pub use constructions::ProjectiveLevel;
use field::{prime_power, Field};
pub use groupfile::GroupFile;

/// Environment variable overriding the directory of stored group files.
pub const DATA_ENV: &str = "UT_LAB_DATA";

/// Group files compiled into the library.
const EMBEDDED: &[(&str, &str)] = &[
    ("m11_11.grp", include_str!("../../data/m11_11.grp")),
    ("m11_12.grp", include_str!("../../data/m11_12.grp")),
    ("m12.grp", include_str!("../../data/m12.grp")),
    ("g2_64.grp", include_str!("../../data/g2_64.grp")),
    ("u33_64.grp", include_str!("../../data/u33_64.grp")),
    ("hs_176.grp", include_str!("../../data/hs_176.grp")),
];

/// How a catalog group is realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Cyclic(usize),
    /// Dihedral group of order `2n` on `n` points.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `x ↦ ω^(mult_step·i) x + b` on GF(q), optionally with Frobenius.
    Affine1 {
        q: u32,
        mult_step: u32,
        frobenius: bool,
    },
    /// ASL(d,p) or AGL(d,p) on GF(p)^d.
    Affine { d: usize, p: u32, special: bool },
    ProjectiveLine { q: u32, level: ProjectiveLevel },
    /// 3²:Q8.
    M9,
    /// PSL(2,9) extended by `x ↦ ωx³`.
    M10,
    /// PSL(3,2) on the points of the Fano plane.
    Fano,
    /// S5 or A5 on 2-subsets of {1..5}.
    OnPairs { alternating: bool },
    /// Sp(6,2) on quadratic forms of plus (36) or minus (28) type.
    SymplecticForms { plus: bool },
    /// A stored group file, by file name.
    Stored(&'static str),
}

/// A named group with its expected order and minimum transitivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub construction: Construction,
    pub order: BigUint,
    /// The group is at least this transitive.
    pub min_transitivity: usize,
    /// Long-running or large; skipped by default sweeps.
    pub heavy: bool,
}

impl GroupSpec {
    fn new(name: impl Into<String>, degree: usize, construction: Construction, order: BigUint, t: usize) -> Self {
        GroupSpec {
            name: name.into(),
            degree,
            construction,
            order,
            min_transitivity: t,
            heavy: false,
        }
    }

    /// `NAME@DEGREE`.
    pub fn id(&self) -> String {
        format!("{}@{}", self.name, self.degree)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn gl_order(d: usize, p: u64) -> BigUint {
    let pd = p.pow(d as u32);
    (0..d).fold(BigUint::one(), |acc, i| acc * big(pd - p.pow(i as u32)))
}

fn psl2_order(q: u64) -> BigUint {
    big((q + 1) * q * (q - 1) / if q % 2 == 1 { 2 } else { 1 })
}

pub fn cyclic(n: usize) -> GroupSpec {
    GroupSpec::new(format!("C{n}"), n, Construction::Cyclic(n), big(n as u64), 1)
}

pub fn dihedral(n: usize) -> GroupSpec {
    GroupSpec::new(format!("D{}", 2 * n), n, Construction::Dihedral(n), big(2 * n as u64), 1)
}

pub fn symmetric(n: usize) -> GroupSpec {
    GroupSpec::new(format!("S{n}"), n, Construction::Symmetric(n), factorial(n), n)
}

pub fn alternating(n: usize) -> GroupSpec {
    let order = if n < 2 { BigUint::one() } else { factorial(n) / big(2) };
    GroupSpec::new(format!("A{n}"), n, Construction::Alternating(n), order, n.saturating_sub(2))
}

/// Affine maps `x ↦ ax + b` on GF(q) with `a` ranging over the subgroup of
/// index `mult_step` in GF(q)*, optionally with field automorphisms.
pub fn affine1(name: impl Into<String>, q: u32, mult_step: u32, frobenius: bool) -> Result<GroupSpec> {
    let (_, e) = prime_power(q as u64).ok_or(Error::BadPrimePower(q as u64))?;
    if mult_step == 0 || !(q - 1).is_multiple_of(mult_step) {
        return Err(invalid(format!("step {mult_step} must divide {}", q - 1)));
    }
    let mut order = big(q as u64 * ((q - 1) / mult_step) as u64);
    if frobenius {
        order *= big(e as u64);
    }
    let t = if mult_step == 1 { 2 } else { 1 };
    Ok(GroupSpec::new(
        name,
        q as usize,
        Construction::Affine1 {
            q,
            mult_step,
            frobenius,
        },
        order,
        t,
    ))
}

pub fn agl1(q: u32) -> Result<GroupSpec> {
    affine1(format!("AGL(1,{q})"), q, 1, false)
}

pub fn agammal1(q: u32) -> Result<GroupSpec> {
    affine1(format!("AGammaL(1,{q})"), q, 1, true)
}

/// The index-2 subgroup of AGL(1,p): `x ↦ ax + b` with `a` a square.
pub fn agl1_index2(p: u32) -> Result<GroupSpec> {
    if !is_prime(p as u64) || p == 2 {
        return Err(Error::NotPrime(p as u64));
    }
    affine1(format!("AGL(1,{p})idx2"), p, 2, false)
}

pub fn affine(d: usize, p: u32, special: bool) -> Result<GroupSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let n = (p as usize).pow(d as u32);
    let mut order = big(n as u64) * gl_order(d, p as u64);
    if special {
        order /= big(p as u64 - 1);
    }
    let name = format!("{}({d},{p})", if special { "ASL" } else { "AGL" });
    let t = if p == 2 && d >= 2 { 3 } else { 2 };
    Ok(GroupSpec::new(name, n, Construction::Affine { d, p, special }, order, t))
}

pub fn projective(q: u32, level: ProjectiveLevel) -> Result<GroupSpec> {
    let (_, e) = prime_power(q as u64).ok_or(Error::BadPrimePower(q as u64))?;
    let q64 = q as u64;
    let pgl = big((q64 + 1) * q64 * (q64 - 1));
    let (prefix, order, t) = match level {
        ProjectiveLevel::Psl => ("PSL", psl2_order(q64), if q.is_multiple_of(2) { 3 } else { 2 }),
        ProjectiveLevel::Pgl => ("PGL", pgl, 3),
        ProjectiveLevel::PSigmaL => ("PSigmaL", psl2_order(q64) * big(e as u64), if q.is_multiple_of(2) { 3 } else { 2 }),
        ProjectiveLevel::PGammaL => ("PGammaL", pgl * big(e as u64), 3),
    };
    Ok(GroupSpec::new(
        format!("{prefix}(2,{q})"),
        q as usize + 1,
        Construction::ProjectiveLine { q, level },
        order,
        t,
    ))
}

fn stored(name: &str, degree: usize, file: &'static str, order: BigUint, t: usize, heavy: bool) -> GroupSpec {
    let mut s = GroupSpec::new(name, degree, Construction::Stored(file), order, t);
    s.heavy = heavy;
    s
}

/// The order of the Higman–Sims group.
pub fn hs_order() -> BigUint {
    big(44_352_000)
}

fn special_groups() -> Vec<GroupSpec> {
    let mut v = vec![
        GroupSpec::new("7:3", 7, Construction::Affine1 { q: 7, mult_step: 2, frobenius: false }, big(21), 1),
        GroupSpec::new("PSL(3,2)", 7, Construction::Fano, big(168), 2),
        GroupSpec::new("3^2:4", 9, Construction::Affine1 { q: 9, mult_step: 2, frobenius: false }, big(36), 1),
        GroupSpec::new("3^2:D8", 9, Construction::Affine1 { q: 9, mult_step: 2, frobenius: true }, big(72), 1),
        GroupSpec::new("M9", 9, Construction::M9, big(72), 2),
        GroupSpec::new("A5", 10, Construction::OnPairs { alternating: true }, big(60), 1),
        GroupSpec::new("S5", 10, Construction::OnPairs { alternating: false }, big(120), 1),
        GroupSpec::new("M10", 10, Construction::M10, big(720), 3),
        GroupSpec::new("S6", 10, Construction::ProjectiveLine { q: 9, level: ProjectiveLevel::PSigmaL }, big(720), 2),
        stored("M11", 11, "m11_11.grp", big(7920), 4, false),
        stored("M11", 12, "m11_12.grp", big(7920), 3, false),
        stored("M12", 12, "m12.grp", big(95040), 5, false),
        GroupSpec::new("Sp(6,2)", 28, Construction::SymplecticForms { plus: false }, big(1_451_520), 2),
        GroupSpec::new("Sp(6,2)", 36, Construction::SymplecticForms { plus: true }, big(1_451_520), 2),
        stored("2^6:G2(2)", 64, "g2_64.grp", big(64 * 12096), 2, true),
        stored("2^6:U3(3)", 64, "u33_64.grp", big(64 * 6048), 2, true),
        stored("HS", 176, "hs_176.grp", hs_order(), 2, true),
    ];
    // heavier entries of the manifest
    for s in v.iter_mut() {
        if s.degree >= 28 {
            s.heavy = true;
        }
    }
    v
}

/// Every group the verification suites refer to.
pub fn catalog_manifest() -> Vec<GroupSpec> {
    let mut out = vec![
        cyclic(5),
        dihedral(5),
        symmetric(5),
        alternating(5),
        cyclic(6),
        symmetric(6),
        alternating(6),
        cyclic(7),
        dihedral(7),
        symmetric(7),
        alternating(7),
        cyclic(8),
        symmetric(8),
        alternating(8),
    ];
    let mk = |r: Result<GroupSpec>| r.expect("static catalog entry");
    out.push(mk(agammal1(8)));
    out.push(mk(affine(3, 2, true)));
    out.push(mk(agammal1(9)));
    out.push(mk(affine(2, 3, true)));
    out.push(mk(affine(2, 3, false)));
    out.push(mk(affine(4, 2, true)));
    for p in (5..200u32).filter(|&p| is_prime(p as u64)) {
        out.push(mk(agl1(p)));
    }
    out.push(mk(agl1(8)));
    out.push(mk(agl1(9)));
    out.push(mk(agl1(16)));
    for q in 4..=32u32 {
        let Some((p, e)) = prime_power(q as u64) else { continue };
        out.push(mk(projective(q, ProjectiveLevel::Psl)));
        if p != 2 {
            out.push(mk(projective(q, ProjectiveLevel::Pgl)));
        }
        if e > 1 {
            if p != 2 {
                out.push(mk(projective(q, ProjectiveLevel::PSigmaL)));
            }
            out.push(mk(projective(q, ProjectiveLevel::PGammaL)));
        }
    }
    out.extend(special_groups());
    for s in out.iter_mut() {
        if s.degree > 40 {
            s.heavy = true;
        }
    }
    out.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
    out
}

/// Manifest entries of degree at most `max_degree`, excluding heavy ones.
pub fn small_catalog(max_degree: usize) -> Vec<GroupSpec> {
    catalog_manifest()
        .into_iter()
        .filter(|s| s.degree <= max_degree && !s.heavy)
        .collect()
}

fn normalize(name: &str) -> String {
    let s: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace('Γ', "Gamma")
        .replace('Σ', "Sigma")
        .replace('²', "^2")
        .replace("D(2*", "D(2x");
    let s = match s.strip_prefix("D(2x").and_then(|r| r.strip_suffix(')')) {
        Some(n) => match n.parse::<usize>() {
            Ok(n) => format!("D{}", 2 * n),
            Err(_) => s,
        },
        None => s,
    };
    s.to_ascii_lowercase()
}

/// Parses `FAMILY(a,b)`.
fn family_args(s: &str) -> Option<(&str, Vec<u32>)> {
    let (head, rest) = s.split_once('(')?;
    let body = rest.strip_suffix(')')?;
    let args = body
        .split(',')
        .map(|a| a.parse::<u32>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some((head, args))
}

fn parse_family(name: &str) -> Result<Option<GroupSpec>> {
    // name is normalized (lowercase)
    if let Some(rest) = name.strip_suffix("idx2") {
        if let Some(("agl", args)) = family_args(rest) {
            if args.len() == 2 && args[0] == 1 {
                return agl1_index2(args[1]).map(Some);
            }
        }
    }
    if let Some((head, args)) = family_args(name) {
        return match (head, args.as_slice()) {
            ("agl", [1, q]) => agl1(*q).map(Some),
            ("agammal", [1, q]) => agammal1(*q).map(Some),
            ("agl", [d, p]) => affine(*d as usize, *p, false).map(Some),
            ("asl", [d, p]) => affine(*d as usize, *p, true).map(Some),
            ("psl", [2, q]) => projective(*q, ProjectiveLevel::Psl).map(Some),
            ("pgl", [2, q]) => projective(*q, ProjectiveLevel::Pgl).map(Some),
            ("psigmal", [2, q]) => projective(*q, ProjectiveLevel::PSigmaL).map(Some),
            ("pgammal", [2, q]) => projective(*q, ProjectiveLevel::PGammaL).map(Some),
            _ => Ok(None),
        };
    }
    let (letter, num) = name.split_at(1.min(name.len()));
    let Ok(n) = num.parse::<usize>() else { return Ok(None) };
    Ok(match letter {
        "c" if n >= 1 => Some(cyclic(n)),
        "d" if n >= 6 && n % 2 == 0 => Some(dihedral(n / 2)),
        "s" if n >= 1 => Some(symmetric(n)),
        "a" if n >= 1 => Some(alternating(n)),
        _ => None,
    })
}

/// Resolves `NAME` or `NAME@DEGREE` to a catalog entry.
pub fn lookup(query: &str) -> Result<GroupSpec> {
    let (name, degree) = match query.rsplit_once('@') {
        Some((n, d)) => (
            n,
            Some(
                d.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("bad degree in `{query}`")))?,
            ),
        ),
        None => (query, None),
    };
    let key = normalize(name);
    let manifest = catalog_manifest();
    let hits: Vec<&GroupSpec> = manifest
        .iter()
        .filter(|s| normalize(&s.name) == key && degree.is_none_or(|d| d == s.degree))
        .collect();
    match hits.len() {
        1 => return Ok(hits[0].clone()),
        0 => {}
        _ => {
            // prefer the natural action when no degree is given
            let natural = hits.iter().min_by_key(|s| s.degree).expect("nonempty");
            return Ok((*natural).clone());
        }
    }
    if let Some(spec) = parse_family(&key)? {
        if degree.is_none_or(|d| d == spec.degree) {
            if spec.degree > crate::perm::MAX_DEGREE {
                return Err(Error::BadDegree {
                    degree: spec.degree,
                    max: crate::perm::MAX_DEGREE,
                });
            }
            return Ok(spec);
        }
    }
    Err(Error::UnknownGroup(query.to_string()))
}

/// Text of a stored group file, from `UT_LAB_DATA` if set, else embedded.
pub fn stored_text(file: &str) -> Result<String> {
    if let Ok(dir) = std::env::var(DATA_ENV) {
        let path = PathBuf::from(dir).join(file);
        if path.exists() {
            return Ok(std::fs::read_to_string(path)?);
        }
    }
    EMBEDDED
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| Error::MissingData(file.to_string()))
}

/// Realizes a catalog entry and checks its order.
pub fn build(spec: &GroupSpec) -> Result<PermGroup> {
    use Construction as C;
    let n = spec.degree;
    let gens = match &spec.construction {
        C::Cyclic(n) => constructions::cyclic(*n),
        C::Dihedral(n) => constructions::dihedral(*n),
        C::Symmetric(n) => constructions::symmetric(*n),
        C::Alternating(n) => constructions::alternating(*n),
        C::Affine1 {
            q,
            mult_step,
            frobenius,
        } => constructions::affine1(&Field::new(*q)?, *mult_step, *frobenius),
        C::Affine { d, p, special } => constructions::affine(*d, *p, *special),
        C::ProjectiveLine { q, level } => constructions::projective_line(&Field::new(*q)?, *level),
        C::M9 => constructions::m9(),
        C::M10 => constructions::m10(&Field::new(9)?)?,
        C::Fano => constructions::fano(),
        C::OnPairs { alternating } => constructions::on_pairs(*alternating),
        C::SymplecticForms { plus } => constructions::sp62_on_forms(*plus),
        C::Stored(file) => {
            let gf = GroupFile::parse(&stored_text(file)?)?;
            if gf.degree != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: gf.degree,
                });
            }
            gf.generators
        }
    };
    let group = PermGroup::new(n, gens)?;
    let actual = group.order();
    if actual != spec.order {
        return Err(Error::OrderMismatch {
            name: spec.id(),
            expected: spec.order.to_string(),
            actual: actual.to_string(),
        });
    }
    Ok(group)
}

/// `lookup` followed by `build`.
pub fn group(query: &str) -> Result<PermGroup> {
    build(&lookup(query)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(group("C5").unwrap().order_u64(), Some(5));
        assert_eq!(group("PGL(2,7)").unwrap().order_u64(), Some(336));
        let agl7 = group("AGL(1,7)").unwrap();
        assert_eq!(agl7.order_u64(), Some(42));
        assert!(agl7.transitivity_degree() >= 2);
        assert_eq!(group("AGL(1,13)idx2").unwrap().order_u64(), Some(78));
        assert_eq!(group("D(2*5)").unwrap().order_u64(), Some(10));
        assert_eq!(group("PΓL(2,8)").unwrap().order_u64(), Some(1512));
        assert_eq!(group("M11@11").unwrap().order_u64(), Some(7920));
        assert_eq!(group("M12").unwrap().order_u64(), Some(95040));
        assert_eq!(lookup("M11").unwrap().degree, 11);
    }

    #[test]
    fn stored_groups_have_their_orders() {
        for id in ["M11@12", "2^6:G2(2)@64", "2^6:U3(3)@64", "HS@176"] {
            let spec = lookup(id).unwrap();
            let g = build(&spec).unwrap();
            assert_eq!(g.order(), spec.order, "{id}");
            assert!(g.transitivity_degree() >= spec.min_transitivity, "{id}");
        }
    }

    #[test]
    fn manifest_has_required_entries() {
        let m = catalog_manifest();
        assert!(m.iter().any(|s| s.name == "M11" && s.degree == 12));
        assert!(m.iter().any(|s| s.name == "PGammaL(2,32)" && s.degree == 33));
        for id in ["7:3@7", "3^2:4@9", "3^2:D8@9", "M9@9", "M10@10", "S6@10", "A5@10", "PSL(3,2)@7"] {
            assert!(m.iter().any(|s| s.id() == id), "{id}");
        }
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(lookup("Foo(3)"), Err(Error::UnknownGroup(_))));
        assert!(matches!(lookup("PSL(2,6)"), Err(Error::BadPrimePower(6))));
        assert!(lookup("C5@6").is_err());
    }

    #[test]
    fn small_manifest_builds_with_expected_transitivity() {
        for spec in small_catalog(12) {
            let g = build(&spec).unwrap_or_else(|e| panic!("{}: {e}", spec.id()));
            assert!(g.transitivity_degree() >= spec.min_transitivity, "{}", spec.id());
        }
    }
}
