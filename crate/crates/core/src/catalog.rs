//! Built-in spaces and fixture operators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Scalar;
use crate::space::{PolygonalSpace, VectorN};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Space,
    Operator,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub note: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "linf1",
        kind: EntryKind::Space,
        note: "sup-norm on R^1",
    },
    CatalogEntry {
        name: "linf2",
        kind: EntryKind::Space,
        note: "sup-norm on R^2",
    },
    CatalogEntry {
        name: "linf3",
        kind: EntryKind::Space,
        note: "sup-norm on R^3",
    },
    CatalogEntry {
        name: "linf4",
        kind: EntryKind::Space,
        note: "sup-norm on R^4",
    },
    CatalogEntry {
        name: "l1_1",
        kind: EntryKind::Space,
        note: "l1-norm on R^1",
    },
    CatalogEntry {
        name: "l1_2",
        kind: EntryKind::Space,
        note: "l1-norm on R^2",
    },
    CatalogEntry {
        name: "l1_3",
        kind: EntryKind::Space,
        note: "l1-norm on R^3",
    },
    CatalogEntry {
        name: "l1_4",
        kind: EntryKind::Space,
        note: "l1-norm on R^4",
    },
    CatalogEntry {
        name: "hexagon",
        kind: EntryKind::Space,
        note: "regular hexagon, vertices (1,0), (1/2, sqrt(3)/2), (-1/2, sqrt(3)/2)",
    },
    CatalogEntry {
        name: "octagon",
        kind: EntryKind::Space,
        note: "regular octagon, vertices (1,0), (1,1)/sqrt(2), (0,1), (-1,1)/sqrt(2)",
    },
    CatalogEntry {
        name: "affine_hexagon",
        kind: EntryKind::Space,
        note: "rational hexagon (1,0), (1,1), (0,1); linear image of the regular one",
    },
    CatalogEntry {
        name: "xp8",
        kind: EntryKind::Space,
        note: "conv(+-e1, +-e2, +-e3, +-(1,1,1)), 8 extreme points in R^3",
    },
    CatalogEntry {
        name: "ex1",
        kind: EntryKind::Operator,
        note: "hexagon -> linf3, x1 -> (1,-1,0), x2 -> (1,0,1)",
    },
    CatalogEntry {
        name: "ex2",
        kind: EntryKind::Operator,
        note: "hexagon -> l1_3, x1 -> (1/2,1/2,0), x2 -> (0,1/2,1/2)",
    },
    CatalogEntry {
        name: "ex3",
        kind: EntryKind::Operator,
        note: "octagon -> linf2, x1 -> (1, sqrt(2)-1), x2 -> (sqrt(2)-1, 1)",
    },
];

fn lit(text: &str) -> Scalar {
    text.parse().expect("catalog literal")
}

fn vecs(rows: &[&[&str]]) -> Vec<VectorN<Scalar>> {
    rows.iter()
        .map(|r| VectorN(r.iter().map(|s| lit(s)).collect()))
        .collect()
}

fn unit(m: usize, j: usize) -> VectorN<Scalar> {
    VectorN((0..m).map(|k| Scalar::from(i64::from(k == j))).collect())
}

/// `l_inf^m`: generators are the sign vectors with first coordinate `+1`.
pub fn linf(m: usize) -> Result<PolygonalSpace<Scalar>> {
    if m == 0 {
        return Err(Error::UnknownName("linf0".into()));
    }
    let gens = (0..1usize << (m - 1))
        .map(|mask| {
            VectorN(
                (0..m)
                    .map(|j| {
                        let negative = j > 0 && mask & (1 << (j - 1)) != 0;
                        Scalar::from(if negative { -1 } else { 1 })
                    })
                    .collect(),
            )
        })
        .collect();
    PolygonalSpace::new(Some(format!("linf{m}")), m, gens)
}

/// `l_1^m`: generators are the unit vectors.
pub fn l1(m: usize) -> Result<PolygonalSpace<Scalar>> {
    if m == 0 {
        return Err(Error::UnknownName("l1_0".into()));
    }
    PolygonalSpace::new(
        Some(format!("l1_{m}")),
        m,
        (0..m).map(|j| unit(m, j)).collect(),
    )
}

fn parse_indexed(name: &str, prefixes: &[&str]) -> Option<usize> {
    for p in prefixes {
        if let Some(rest) = name.strip_prefix(p) {
            let rest = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            if let Ok(m) = rest.parse::<usize>() {
                return Some(m);
            }
        }
    }
    None
}

/// Canonical catalog name for an accepted alias such as `linf(2)` or `l1(3)`.
pub fn canonical_name(name: &str) -> Option<String> {
    if ENTRIES.iter().any(|e| e.name == name) {
        return Some(name.to_string());
    }
    if let Some(m) = parse_indexed(name, &["linf", "l_inf"]) {
        return (1..=4).contains(&m).then(|| format!("linf{m}"));
    }
    if let Some(m) = parse_indexed(name, &["l1_", "l1"]) {
        return (1..=4).contains(&m).then(|| format!("l1_{m}"));
    }
    None
}

pub fn get_space(name: &str) -> Result<Arc<PolygonalSpace<Scalar>>> {
    let canonical = canonical_name(name).ok_or_else(|| Error::UnknownName(name.into()))?;
    let space = match canonical.as_str() {
        "hexagon" => PolygonalSpace::new(
            Some("hexagon".into()),
            2,
            vecs(&[
                &["1", "0"],
                &["1/2", "1/2*sqrt(3)"],
                &["-1/2", "1/2*sqrt(3)"],
            ]),
        )?,
        "octagon" => PolygonalSpace::new(
            Some("octagon".into()),
            2,
            vecs(&[
                &["1", "0"],
                &["1/2*sqrt(2)", "1/2*sqrt(2)"],
                &["0", "1"],
                &["-1/2*sqrt(2)", "1/2*sqrt(2)"],
            ]),
        )?,
        "affine_hexagon" => PolygonalSpace::new(
            Some("affine_hexagon".into()),
            2,
            vecs(&[&["1", "0"], &["1", "1"], &["0", "1"]]),
        )?,
        "xp8" => PolygonalSpace::new(
            Some("xp8".into()),
            3,
            vecs(&[
                &["1", "0", "0"],
                &["0", "1", "0"],
                &["0", "0", "1"],
                &["1", "1", "1"],
            ]),
        )?,
        other => {
            if let Some(m) = other.strip_prefix("linf") {
                linf(m.parse().expect("canonical"))?
            } else if let Some(m) = other.strip_prefix("l1_") {
                l1(m.parse().expect("canonical"))?
            } else {
                return Err(Error::UnknownName(name.into()));
            }
        }
    };
    Ok(Arc::new(space))
}

pub fn get_operator(name: &str) -> Result<Operator<Scalar>> {
    let (domain, codomain, images) = match name {
        "ex1" => (
            "hexagon",
            "linf3",
            vecs(&[&["1", "-1", "0"], &["1", "0", "1"]]),
        ),
        "ex2" => (
            "hexagon",
            "l1_3",
            vecs(&[&["1/2", "1/2", "0"], &["0", "1/2", "1/2"]]),
        ),
        "ex3" => (
            "octagon",
            "linf2",
            vecs(&[&["1", "-1+sqrt(2)"], &["-1+sqrt(2)", "1"]]),
        ),
        _ => return Err(Error::UnknownName(name.into())),
    };
    Operator::from_images(get_space(domain)?, get_space(codomain)?, images)
}

pub fn space_names() -> impl Iterator<Item = &'static str> {
    ENTRIES
        .iter()
        .filter(|e| e.kind == EntryKind::Space)
        .map(|e| e.name)
}

pub fn operator_names() -> impl Iterator<Item = &'static str> {
    ENTRIES
        .iter()
        .filter(|e| e.kind == EntryKind::Operator)
        .map(|e| e.name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for name in space_names() {
            get_space(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        for name in operator_names() {
            get_operator(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(matches!(get_space("dodecagon"), Err(Error::UnknownName(_))));
        assert!(matches!(get_operator("ex9"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn aliases() {
        assert_eq!(canonical_name("linf(3)").as_deref(), Some("linf3"));
        assert_eq!(canonical_name("l1(2)").as_deref(), Some("l1_2"));
        assert_eq!(canonical_name("linf5"), None);
    }

    #[test]
    fn standard_space_sizes() {
        for m in 1..=4 {
            assert_eq!(
                get_space(&format!("linf{m}"))
                    .unwrap()
                    .extreme_point_count(),
                1 << m
            );
            assert_eq!(
                get_space(&format!("l1_{m}")).unwrap().extreme_point_count(),
                2 * m
            );
        }
    }

    #[test]
    fn fields() {
        assert_eq!(get_space("hexagon").unwrap().radicand(), 3);
        assert_eq!(get_space("octagon").unwrap().radicand(), 2);
        assert_eq!(get_space("xp8").unwrap().radicand(), 1);
    }
}
