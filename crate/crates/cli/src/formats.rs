//! Text formats for points and polynomials.
//!
//! Point file, one record per line, `#` starts a comment:
//!
//! ```text
//! x ; [] ; -1          # val_x on the chart's simple roots c(α_i)
//! y ; [0] ; 1/2, inf   # val_y on the chart's negative simple roots c(-α_i)
//! ```
//!
//! The middle field is the chart as a word in the simple reflections
//! (0-based, e.g. `[0 1]`). A record without a label is a `y` record.
//!
//! Polynomial file: a header line `ring = laurent` or
//! `ring = monoid ; chart = [0 1]` (chart defaults to `[]`), then one term
//! per line:
//!
//! ```text
//! 3/4 ; chi = 1, -1 ; nu = (0:1, 4:2)
//! ```
//!
//! For `laurent`, `chi` is in the basis `Δ`; for `monoid` it lists the
//! multiplicities over the chart's `-Δ`, so all entries are `≥ 0`. `nu` maps
//! root indices (as printed by `bt-wonder roots`) to exponents; `nu = ()` or
//! a missing `nu` field means no `ξ` factors.

use bt_wonder_core::{
    ApartmentPoint, BoundaryPoint, CellPolynomial, Monomial, Ring, RootSystem, Val, ValuedField, WeylElement,
};

use crate::CliError;

/// A labelled point record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointRecord {
    X(ApartmentPoint),
    Y(BoundaryPoint),
}

/// Contents of a point file, with the line number of each record.
#[derive(Debug, Clone, Default)]
pub struct PointFile {
    pub records: Vec<(usize, PointRecord)>,
}

impl PointFile {
    pub fn xs(&self) -> impl Iterator<Item = &ApartmentPoint> {
        self.records.iter().filter_map(|(_, r)| match r {
            PointRecord::X(x) => Some(x),
            PointRecord::Y(_) => None,
        })
    }

    pub fn ys(&self) -> impl Iterator<Item = (usize, &BoundaryPoint)> {
        self.records.iter().filter_map(|(l, r)| match r {
            PointRecord::Y(y) => Some((*l, y)),
            PointRecord::X(_) => None,
        })
    }
}

fn err(file: &str, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { file: file.to_string(), line, msg: msg.into() }
}

/// Meaningful lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_chart(rs: &RootSystem, s: &str) -> Result<WeylElement, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let word = inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad reflection index {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    WeylElement::from_word(rs, &word).map_err(|e| e.to_string())
}

fn parse_vals(s: &str) -> Result<Vec<Val>, String> {
    s.split(',').map(|t| t.trim().parse::<Val>().map_err(|e| e.to_string())).collect()
}

pub fn parse_points(rs: &RootSystem, file: &str, text: &str) -> Result<PointFile, CliError> {
    let n = rs.rank();
    let mut out = PointFile::default();
    for (ln, line) in lines(text) {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let (label, chart, vals) = match fields.as_slice() {
            [label, chart, vals] => (*label, *chart, *vals),
            [chart, vals] => ("y", *chart, *vals),
            _ => return Err(err(file, ln, "expected `label ; chart ; values`")),
        };
        let chart = parse_chart(rs, chart).map_err(|m| err(file, ln, m))?;
        let vals = parse_vals(vals).map_err(|m| err(file, ln, m))?;
        if vals.len() != n {
            return Err(err(file, ln, format!("expected {n} values, found {}", vals.len())));
        }
        let record = match label {
            "x" => {
                let finite = vals
                    .iter()
                    .map(|v| v.finite().cloned().ok_or_else(|| err(file, ln, "x must be an interior point")))
                    .collect::<Result<Vec<_>, _>>()?;
                PointRecord::X(ApartmentPoint::from_chart_values(rs, &chart, &finite))
            }
            "y" => PointRecord::Y(BoundaryPoint::new(chart, vals).map_err(|e| err(file, ln, e.to_string()))?),
            other => return Err(err(file, ln, format!("unknown label {other:?}, expected x or y"))),
        };
        out.records.push((ln, record));
    }
    Ok(out)
}

fn parse_nu(rs: &RootSystem, s: &str) -> Result<Vec<(usize, u32)>, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|pair| {
            let (k, m) = pair.split_once(':').ok_or_else(|| format!("expected root:exponent, got {pair:?}"))?;
            let k: usize = k.trim().parse().map_err(|_| format!("bad root index {k:?}"))?;
            if k >= rs.num_roots() {
                return Err(format!("root index {k} out of range (0..{})", rs.num_roots()));
            }
            let m: u32 = m.trim().parse().map_err(|_| format!("bad exponent {m:?}"))?;
            Ok((k, m))
        })
        .collect()
}

fn parse_ring(rs: &RootSystem, line: &str) -> Result<Ring, String> {
    let mut ring = None;
    let mut chart = WeylElement::identity(rs.rank());
    for field in line.split(';') {
        let (key, value) = field.split_once('=').ok_or_else(|| format!("expected key = value, got {field:?}"))?;
        match (key.trim(), value.trim()) {
            ("ring", "laurent") => ring = Some(false),
            ("ring", "monoid") => ring = Some(true),
            ("ring", other) => return Err(format!("unknown ring {other:?}, expected laurent or monoid")),
            ("chart", c) => chart = parse_chart(rs, c)?,
            (other, _) => return Err(format!("unknown header key {other:?}")),
        }
    }
    match ring {
        Some(true) => Ok(Ring::Monoid(chart)),
        Some(false) => Ok(Ring::Laurent),
        None => Err("header must set ring".to_string()),
    }
}

pub fn parse_polynomial<F: ValuedField>(
    rs: &RootSystem,
    field: &F,
    file: &str,
    text: &str,
) -> Result<CellPolynomial<F::Elem>, CliError> {
    let n = rs.rank();
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| err(file, 1, "empty polynomial file"))?;
    let ring = parse_ring(rs, header).map_err(|m| err(file, hl, m))?;
    let mut terms = Vec::new();
    for (ln, line) in it {
        let mut fields = line.split(';').map(str::trim);
        let coeff = fields.next().unwrap_or("");
        let c = field.parse_elem(coeff).map_err(|e| err(file, ln, e.to_string()))?;
        let mut chi = None;
        let mut nu = Vec::new();
        for f in fields {
            let (key, value) =
                f.split_once('=').ok_or_else(|| err(file, ln, format!("expected key = value, got {f:?}")))?;
            match key.trim() {
                "chi" => {
                    let v = value
                        .split(',')
                        .map(|t| t.trim().parse::<i64>().map_err(|_| err(file, ln, format!("bad integer {t:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    chi = Some(v);
                }
                "nu" => nu = parse_nu(rs, value).map_err(|m| err(file, ln, m))?,
                other => return Err(err(file, ln, format!("unknown field {other:?}"))),
            }
        }
        let chi = chi.unwrap_or_else(|| vec![0; n]);
        if chi.len() != n {
            return Err(err(file, ln, format!("expected {n} chi entries, found {}", chi.len())));
        }
        let chi = match &ring {
            Ring::Laurent => chi,
            Ring::Monoid(c) => {
                if chi.iter().any(|&m| m < 0) {
                    return Err(err(file, ln, "monoid multiplicities must be nonnegative"));
                }
                c.apply(&chi).into_iter().map(|v| -v).collect()
            }
        };
        terms.push((Monomial::new(chi, nu), c));
    }
    CellPolynomial::from_terms(rs, ring, terms).map_err(|e| err(file, hl, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bt_wonder_core::{PAdic, Q};

    fn a2() -> RootSystem {
        "A2".parse().unwrap()
    }

    #[test]
    fn point_records() {
        let rs = a2();
        let text = "# sample\nx ; [] ; 1, 2\ny ; [0] ; 1/2, inf\n[1] ; 0, 0\n";
        let pf = parse_points(&rs, "p", text).unwrap();
        assert_eq!(pf.records.len(), 3);
        let x = pf.xs().next().unwrap();
        assert_eq!(x.vals(), &[Q::from_integer(1.into()), Q::from_integer(2.into())]);
        let ys: Vec<_> = pf.ys().map(|(l, _)| l).collect();
        assert_eq!(ys, vec![3, 4]);
    }

    #[test]
    fn point_errors_carry_line_numbers() {
        let rs = a2();
        let e = parse_points(&rs, "p", "\n\ny ; [] ; 1\n").unwrap_err();
        assert_eq!(e.to_string(), "p:3: expected 2 values, found 1");
        let e = parse_points(&rs, "p", "x ; [] ; inf, 0\n").unwrap_err();
        assert!(e.to_string().starts_with("p:1:"));
        let e = parse_points(&rs, "p", "y ; [7] ; 0, 0\n").unwrap_err();
        assert!(e.to_string().starts_with("p:1:"));
    }

    #[test]
    fn polynomial_terms() {
        let rs = a2();
        let field = PAdic::new(2).unwrap();
        let text = "ring = monoid ; chart = [0]\n3/4 ; chi = 1, 0 ; nu = (0:1)\n1 ; chi = 0, 2\n";
        let f = parse_polynomial(&rs, &field, "f", text).unwrap();
        assert_eq!(f.len(), 2);
        let laurent = parse_polynomial(&rs, &field, "f", "ring = laurent\n1 ; chi = -1, 3 ; nu = ()\n").unwrap();
        assert_eq!(*laurent.ring(), Ring::Laurent);
    }

    #[test]
    fn polynomial_errors() {
        let rs = a2();
        let field = PAdic::new(2).unwrap();
        let e = parse_polynomial(&rs, &field, "f", "ring = monoid\n1 ; chi = -1, 0\n").unwrap_err();
        assert_eq!(e.to_string(), "f:2: monoid multiplicities must be nonnegative");
        let e = parse_polynomial(&rs, &field, "f", "ring = laurent\n1 ; nu = (9:1)\n").unwrap_err();
        assert!(e.to_string().contains("out of range"));
        let e = parse_polynomial(&rs, &field, "f", "ring = torus\n").unwrap_err();
        assert!(e.to_string().starts_with("f:1:"));
    }
}
