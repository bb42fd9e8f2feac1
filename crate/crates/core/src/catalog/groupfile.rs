//! Text format for stored groups.
//!
//! ```text
//! # comments start with '#'
//! name: M12
//! degree: 12
//! order: 95040
//! cycles: (1,2,3,4,5,6,7,8,9,10,11)
//! generator: 1 2 3 ...      (1-based image array)
//! ```
//!
//! `order` is optional; when present it is checked on load.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A parsed group file.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub order: Option<BigUint>,
    pub generators: Vec<Permutation>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        let mut name = None;
        let mut degree: Option<usize> = None;
        let mut order = None;
        let mut generators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "expected `key: value`".into(),
            })?;
            let value = value.trim();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "degree" => {
                    degree = Some(
                        value
                            .parse()
                            .map_err(|_| parse_err(format!("bad degree `{value}`")))?,
                    )
                }
                "order" => {
                    order = Some(
                        value
                            .parse::<BigUint>()
                            .map_err(|_| parse_err(format!("bad order `{value}`")))?,
                    )
                }
                "generator" | "cycles" => {
                    let n = degree.ok_or_else(|| parse_err("degree must precede generators".into()))?;
                    let g = if key.trim() == "cycles" {
                        Permutation::parse_cycles(n, value)
                    } else {
                        let images = value
                            .split(|c: char| c == ',' || c.is_whitespace())
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse::<usize>().map_err(|_| parse_err(format!("bad point `{s}`"))))
                            .collect::<Result<Vec<_>>>()?;
                        if images.len() != n {
                            return Err(parse_err(format!(
                                "generator has {} images, expected {n}",
                                images.len()
                            )));
                        }
                        Permutation::from_images(&images)
                    };
                    generators.push(g.map_err(|e| parse_err(e.to_string()))?);
                }
                other => return Err(parse_err(format!("unknown key `{other}`"))),
            }
        }
        let degree = degree.ok_or(Error::Parse {
            line: 0,
            msg: "missing degree".into(),
        })?;
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        Ok(GroupFile {
            name: name.unwrap_or_else(|| "unnamed".into()),
            degree,
            order,
            generators,
        })
    }

    pub fn load(path: &Path) -> Result<GroupFile> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Builds the group, checking the recorded order when present.
    pub fn to_group(&self) -> Result<PermGroup> {
        let g = PermGroup::new(self.degree, self.generators.clone())?;
        if let Some(expected) = &self.order {
            let actual = g.order();
            if &actual != expected {
                return Err(Error::OrderMismatch {
                    name: self.name.clone(),
                    expected: expected.to_string(),
                    actual: actual.to_string(),
                });
            }
        }
        Ok(g)
    }

    /// Serializes a group with image-array generator lines.
    pub fn render(name: &str, group: &PermGroup, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "name: {name}");
        let _ = writeln!(out, "degree: {}", group.degree());
        let _ = writeln!(out, "order: {}", group.order());
        for g in group.generators() {
            let imgs: Vec<String> = g.images().iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "generator: {}", imgs.join(" "));
        }
        out
    }
}
