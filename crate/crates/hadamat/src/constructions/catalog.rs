//! The named matrix catalog.
//!
//! Every matrix is transcribed cell by cell from its display, using the
//! tokens below, and evaluated in `Q(ζ_60)`:
//!
//! | token          | value                                |
//! |----------------|--------------------------------------|
//! | `w`, `w^2`     | `ζ_3`, `ζ_3²`                        |
//! | `i`, `-i`      | `ζ_4`, `ζ_4³`                        |
//! | `(-1)^{p/q}`   | principal branch `e^{iπp/q}`         |
//! | `-(-1)^{p/q}`  | its negative                         |
//!
//! Cells whose display is damaged are transcribed with their repaired
//! reading; each repair is listed in [`errata`].

use std::sync::OnceLock;

use crate::constructions::{c2_solutions, fourier};
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;
use crate::CATALOG_ORDER;

#[derive(Clone, Debug)]
pub struct NamedMatrix {
    pub name: &'static str,
    pub matrix: CycloMatrix,
    /// Label of the display the matrix comes from.
    pub provenance: &'static str,
}

/// Parses a display token into `Q(ζ_60)`.
pub fn display_value(token: &str) -> Result<CycloNum> {
    let bad = || Error::InvalidParameter(format!("unknown display token {token:?}"));
    let exponent: i64 = match token {
        "0" => return Ok(CycloNum::zero(CATALOG_ORDER)),
        "1" => 0,
        "w" => 20,
        "w^2" => 40,
        "i" => 15,
        "-i" => 45,
        _ => {
            let (negate, body) = match token.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, token),
            };
            let frac = body
                .strip_prefix("(-1)^{")
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(bad)?;
            let (p, q) = frac.split_once('/').ok_or_else(bad)?;
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            // e^{iπp/q} = ζ_60^{30p/q}
            if q == 0 || (30 * p) % q != 0 {
                return Err(bad());
            }
            30 * p / q + if negate { 30 } else { 0 }
        }
    };
    CycloNum::root_of_unity(CATALOG_ORDER, exponent)
}

const M13: &str = "-(-1)^{1/3}";
const P23: &str = "(-1)^{2/3}";
const P16: &str = "(-1)^{1/6}";
const P56: &str = "(-1)^{5/6}";
const M16: &str = "-(-1)^{1/6}";
const M56: &str = "-(-1)^{5/6}";
const M15: &str = "-(-1)^{1/5}";
const P25: &str = "(-1)^{2/5}";
const M35: &str = "-(-1)^{3/5}";
const P45: &str = "(-1)^{4/5}";

type Rows = &'static [&'static [&'static str]];

const DISPLAYS: &[(&str, &str, Rows)] = &[
    ("A_1", "a15", &[&["w", "1", "1"], &["1", "w", "1"], &["1", "1", "w"]]),
    ("A_2", "a15", &[&["1", "w", "1"], &["1", "1", "w"], &["w", "1", "1"]]),
    ("A_3", "a15", &[&["w", "w", "1"], &["1", "w", "w"], &["w", "1", "w"]]),
    ("A_4", "a15", &[&["1", "1", "w"], &["w", "1", "1"], &["1", "w", "1"]]),
    ("A_5", "a15", &[&["w", "1", "w"], &["w", "w", "1"], &["1", "w", "w"]]),
    ("B_1", "b15", &[&["w^2", "1", "1"], &["1", "w^2", "1"], &["1", "1", "w^2"]]),
    ("B_2", "b15", &[&["1", "w^2", "1"], &["1", "1", "w^2"], &["w^2", "1", "1"]]),
    ("B_3", "b15", &[&["w^2", "w^2", "1"], &["1", "w^2", "w^2"], &["w^2", "1", "w^2"]]),
    ("B_4", "b15", &[&["1", "1", "w^2"], &["w^2", "1", "1"], &["1", "w^2", "1"]]),
    ("B_5", "b15", &[&["w^2", "1", "w^2"], &["w^2", "w^2", "1"], &["1", "w^2", "w^2"]]),
    ("A_11", "a1112", &[&[M13, "1", "1"], &["1", M13, "1"], &["1", "1", M13]]),
    ("A_12", "a1112", &[&[P23, "1", "1"], &["1", P23, "1"], &["1", "1", P23]]),
    ("A_1112", "a11121211", &[&[P16, "-i", "-i"], &["-i", P16, "-i"], &["-i", "-i", P16]]),
    ("A_1211", "a11121211", &[&[P56, "-i", "-i"], &["-i", P56, "-i"], &["-i", "-i", P56]]),
    ("A_21", "a2122", &[&["1", M13, "1"], &["1", "1", M13], &[M13, "1", "1"]]),
    ("A_22", "a2122", &[&["1", P23, "1"], &["1", "1", P23], &[P23, "1", "1"]]),
    ("A_31", "a3132", &[&[M13, M13, "1"], &["1", M13, M13], &[M13, "1", M13]]),
    ("A_32", "a3132", &[&[P23, P23, "1"], &["1", P23, P23], &[P23, "1", P23]]),
    ("A_3132", "A31323231", &[&["i", M16, M16], &[M16, "i", M16], &[M16, M16, "i"]]),
    ("A_3231", "A31323231", &[&["i", M56, M56], &[M56, "i", M56], &[M56, M56, "i"]]),
    ("D_11", "d11d12", &[&[P16, P56, P56], &[P56, P16, P56], &[P56, P56, P16]]),
    ("D_12", "d11d12", &[&[P56, P16, P16], &[P16, P56, P16], &[P16, P16, P56]]),
    ("A_41", "a4142", &[&["1", "1", M13], &[M13, "1", "1"], &["1", M13, "1"]]),
    ("A_42", "a4142", &[&["1", "1", P23], &[P23, "1", "1"], &["1", P23, "1"]]),
    ("A_51", "a5152", &[&[M13, "1", M13], &[M13, M13, "1"], &["1", M13, M13]]),
    ("A_52", "a5152", &[&[P23, "1", P23], &[P23, P23, "1"], &["1", P23, P23]]),
    ("A_5152", "A5152a5251", &[&["i", M16, M16], &[M16, "i", M16], &[M16, M16, "i"]]),
    ("A_5251", "A5152a5251", &[&["i", M56, M56], &[M56, "i", M56], &[M56, M56, "i"]]),
    ("B_11", "b1112", &[&[P23, "1", "1"], &["1", P23, "1"], &["1", "1", P23]]),
    ("B_12", "b1112", &[&[M13, "1", "1"], &["1", M13, "1"], &["1", "1", M13]]),
    ("B_21", "b21b22", &[&[P23, "1", "1"], &["1", P23, "1"], &["1", "1", P23]]),
    ("B_22", "b21b22", &[&[M13, "1", "1"], &["1", M13, "1"], &["1", "1", M13]]),
    ("B_31", "b3132", &[&[P23, P23, "1"], &["1", P23, P23], &[P23, "1", P23]]),
    ("B_32", "b3132", &[&[M13, M13, "1"], &["1", M13, M13], &[M13, "1", M13]]),
    ("B_41", "b4142", &[&["1", "1", P23], &[P23, "1", "1"], &["1", P23, "1"]]),
    ("B_42", "b4142", &[&["1", "1", M13], &[M13, "1", "1"], &["1", M13, "1"]]),
    ("B_4142", "B41424241", &[&[P56, "-i", "-i"], &["-i", P56, "-i"], &["-i", "-i", P56]]),
    ("B_4241", "B41424241", &[&[P16, "-i", "-i"], &["-i", P16, "-i"], &["-i", "-i", P16]]),
    ("B_51", "B5152", &[&[P23, "1", P23], &[P23, P23, "1"], &["1", P23, P23]]),
    ("B_52", "B5152", &[&[M13, "1", M13], &[M13, M13, "1"], &["1", M13, M13]]),
    ("I_2/3", "I_{2/3}", &[&[P23, "0", "0"], &["0", P23, "0"], &["0", "0", P23]]),
    ("I_1/3", "I_{m1/3}", &[&[M13, "0", "0"], &["0", M13, "0"], &["0", "0", M13]]),
    (
        "D_1",
        "d12",
        &[
            &["1", M15, P45, P45, M15],
            &[M15, "1", M15, P45, P45],
            &[P45, M15, "1", M15, P45],
            &[P45, P45, M15, "1", M15],
            &[M15, P45, P45, M15, "1"],
        ],
    ),
    (
        "D_2",
        "d12",
        &[
            &["1", P25, M35, M35, P25],
            &[P25, "1", P25, M35, M35],
            &[M35, P25, "1", P25, M35],
            &[M35, M35, P25, "1", P25],
            &[P25, M35, M35, P25, "1"],
        ],
    ),
    (
        "D_3",
        "d34",
        &[
            &["1", M35, P25, P25, M35],
            &[M35, "1", M35, P25, P25],
            &[P25, M35, "1", M35, P25],
            &[P25, P25, M35, "1", M35],
            &[M35, P25, P25, M35, "1"],
        ],
    ),
    (
        "D_4",
        "d34",
        &[
            &["1", P45, M15, M15, P45],
            &[P45, "1", P45, M15, M15],
            &[M15, P45, "1", P45, M15],
            &[M15, M15, P45, "1", P45],
            &[P45, M15, M15, P45, "1"],
        ],
    ),
];

fn transcribe(rows: Rows) -> Result<CycloMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|t| display_value(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CycloMatrix::from_rows(CATALOG_ORDER, rows)
}

fn build() -> Vec<NamedMatrix> {
    let mut out: Vec<NamedMatrix> = DISPLAYS
        .iter()
        .map(|&(name, provenance, rows)| NamedMatrix {
            name,
            matrix: transcribe(rows).expect("catalog display transcribes"),
            provenance,
        })
        .collect();

    // The 2x2 family at its reference instantiation a = b = c = d = 1.
    let one = CycloNum::one(CATALOG_ORDER);
    for (which, name) in [(1, "H_1"), (2, "H_2"), (3, "H_3"), (4, "H_4")] {
        out.push(NamedMatrix {
            name,
            matrix: c2_solutions(&one, &one, &one, &one, which).expect("nonzero parameters"),
            provenance: "h14",
        });
    }
    for (n, name) in [(2, "F_2"), (3, "F_3"), (5, "F_5")] {
        out.push(NamedMatrix {
            name,
            matrix: fourier(n)
                .and_then(|f| f.embed(CATALOG_ORDER))
                .expect("Fourier matrix embeds"),
            provenance: if n == 3 { "f3" } else { "fourier" },
        });
    }
    out
}

/// Every named matrix, built once.
pub fn catalog() -> &'static [NamedMatrix] {
    static CATALOG: OnceLock<Vec<NamedMatrix>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|m| m.name).collect()
}

pub fn lookup(name: &str) -> Option<&'static NamedMatrix> {
    catalog().iter().find(|m| m.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErratumKind {
    /// A damaged cell, repaired to the structurally symmetric reading.
    Typo,
    /// A matrix name that does not match any display but has an evident
    /// intended target.
    NameDrift,
    /// A referenced matrix that is never displayed.
    DanglingName,
    /// Two displays that coincide.
    DuplicateDisplay,
    /// A formula that contradicts the constraint it is derived from.
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub kind: ErratumKind,
    pub location: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<(usize, usize)>,
    pub literal: &'static str,
    pub reading: &'static str,
    pub note: &'static str,
}

const fn erratum(
    id: &'static str,
    kind: ErratumKind,
    location: &'static str,
    cell: Option<(usize, usize)>,
    literal: &'static str,
    reading: &'static str,
    note: &'static str,
) -> Erratum {
    Erratum {
        id,
        kind,
        location,
        cell,
        literal,
        reading,
        note,
    }
}

const ERRATA: &[Erratum] = &[
    erratum("E01", ErratumKind::Formula, "h14:H_1", Some((0, 0)), "+bc/d", "-bc/d",
        "bc + ad = 0 forces a = -bc/d; both signs are tested"),
    erratum("E02", ErratumKind::Formula, "h14:H_3", Some((1, 0)), "-bc/a", "-ad/b",
        "the displayed entry depends on c itself; bc + ad = 0 solved for c gives -ad/b"),
    erratum("E03", ErratumKind::Formula, "eq:a-quadratic", None, "sqrt(c^4 - 4b^2 c)", "sqrt(c^4 - 4b^3 c)",
        "discriminant of b a^2 + c^2 a + b^2 c; the two agree at b = 1"),
    erratum("E04", ErratumKind::Typo, "a1112:A_12", Some((1, 1)), "(-1^{2/3}", "(-1)^{2/3}",
        "missing parenthesis"),
    erratum("E05", ErratumKind::Typo, "a2122:A_22", Some((1, 2)), "(-1^{2/3}", "(-1)^{2/3}",
        "missing parenthesis"),
    erratum("E06", ErratumKind::Typo, "a3132:A_32", Some((1, 1)), "(-1^{2/3}", "(-1)^{2/3}",
        "missing parenthesis"),
    erratum("E07", ErratumKind::Typo, "a3132:A_32", Some((1, 2)), "(-1^{2/3}", "(-1)^{2/3}",
        "missing parenthesis"),
    erratum("E08", ErratumKind::Typo, "a3132:A_32", Some((2, 2)), "(-1^{2/3})", "(-1)^{2/3}",
        "misplaced parenthesis"),
    erratum("E09", ErratumKind::Typo, "d12:D_2", Some((2, 3)), "-(-1)^{2/5}", "(-1)^{2/5}",
        "circulant symmetry of (1, a, a^4, a^4, a) requires a = (-1)^{2/5} here"),
    erratum("E10", ErratumKind::Typo, "sol:a_1", None, "-1(-1)^{1/5}", "-(-1)^{1/5}",
        "same reading for a_3 = -1(-1)^{3/5}"),
    erratum("E11", ErratumKind::NameDrift, "text:A_{211}", None, "A_{211}", "A_1211",
        "generated partner of A_1112"),
    erratum("E12", ErratumKind::NameDrift, "text:B_{4122}", None, "B_{4122}", "B_4142",
        "closest displayed name"),
    erratum("E13", ErratumKind::DuplicateDisplay, "A5152a5251", None, "A_5152, A_5251", "A_3132, A_3231",
        "displays are identical; kept as separate catalog entries, not merged"),
    erratum("E14", ErratumKind::DuplicateDisplay, "b21b22", None, "B_21, B_22", "B_11, B_12",
        "displays repeat B_11/B_12 rather than following the shift pattern of B_2; reproduced as displayed"),
    erratum("E15", ErratumKind::DanglingName, "text:A_{3212}", None, "A_{3212}", "A_3231",
        "never displayed; claims using it are unresolvable, nearest displayed name tested"),
    erratum("E16", ErratumKind::DanglingName, "text:A_{3122}", None, "A_{3122}", "A_3132",
        "never displayed; claims using it are unresolvable, nearest displayed name tested"),
    erratum("E17", ErratumKind::DanglingName, "text:B_{5152}", None, "B_{5152}", "A_5152",
        "never displayed; claims using it are unresolvable, nearest displayed name tested"),
    erratum("E18", ErratumKind::DanglingName, "text:A_{4142}", None, "A_{4142}", "A_1112",
        "never displayed; the text says A_41, A_42 generate a11121211"),
    erratum("E19", ErratumKind::DanglingName, "text:A_{2122}", None, "A_{2122}", "A_1112",
        "never displayed; the text says A_21, A_22 generate a11121211"),
    erratum("E20", ErratumKind::DanglingName, "text:B_{3132}", None, "B_{3132}", "A_5152",
        "never displayed; the text says B_31, B_32 generate A_5152"),
    erratum("E21", ErratumKind::DanglingName, "text:B_{2122}", None, "B_{2122}", "A_1112",
        "never displayed; the text says it coincides with A_1112"),
    erratum("E22", ErratumKind::DanglingName, "text:B_{2221}", None, "B_{2221}", "A_1211",
        "never displayed; the text says it coincides with A_{211}, read as A_1211"),
];

/// Every repair, name normalisation and dangling reference, in a fixed order.
pub fn errata() -> &'static [Erratum] {
    ERRATA
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn principal_branch_tokens() {
        // Independent numeric reading of each token.
        let pi = std::f64::consts::PI;
        let cases = [
            (M13, pi + pi / 3.0),
            (P23, 2.0 * pi / 3.0),
            (P16, pi / 6.0),
            (P56, 5.0 * pi / 6.0),
            (M16, pi + pi / 6.0),
            (M56, pi + 5.0 * pi / 6.0),
            (M15, pi + pi / 5.0),
            (P25, 2.0 * pi / 5.0),
            (M35, pi + 3.0 * pi / 5.0),
            (P45, 4.0 * pi / 5.0),
            ("w", 2.0 * pi / 3.0),
            ("w^2", 4.0 * pi / 3.0),
            ("i", pi / 2.0),
            ("-i", 3.0 * pi / 2.0),
        ];
        for (token, angle) in cases {
            let v = display_value(token).unwrap().to_complex();
            assert!(
                (v - Complex64::from_polar(1.0, angle)).norm() < 1e-12,
                "{token}"
            );
        }
        assert_eq!(display_value(M13).unwrap(), display_value("w^2").unwrap());
        assert_eq!(display_value(P23).unwrap(), display_value("w").unwrap());
        assert!(display_value("(-1^{2/3}").is_err());
        assert!(display_value("(-1)^{1/7}").is_err());
    }

    #[test]
    fn catalog_names_are_unique() {
        let names = catalog_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(names.len(), DISPLAYS.len() + 7);
    }

    #[test]
    fn catalog_entries_are_unimodular_or_zero() {
        for m in catalog() {
            assert_eq!(m.matrix.order(), CATALOG_ORDER);
            for e in m.matrix.entries() {
                assert!(e.is_zero() || e.is_unimodular(), "{}", m.name);
            }
        }
    }

    #[test]
    fn spot_checks() {
        let d2 = &lookup("D_2").unwrap().matrix;
        assert_eq!(d2.get(0, 1), &CycloNum::root_of_unity(5, 1).unwrap().embed(60).unwrap());
        let a11 = &lookup("A_11").unwrap().matrix;
        assert_eq!(a11.get(0, 0), &CycloNum::root_of_unity(3, 2).unwrap().embed(60).unwrap());
        assert!(a11.get(0, 1).is_one());
        assert!(lookup("A_3212").is_none());
    }
}
