//! The on-disk polynomial system format.
//!
//! ```text
//! # optional comment lines
//! vars: x,y,z,h
//! p: 65521
//! x^2 + y^2 - 2*x*z - 2*y*z + z^2 + h^2
//! ...
//! ```
//!
//! One polynomial per line after the two header lines. Lines starting
//! with `#` are ignored; the generator writes its seed and verification
//! stamp there.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;

/// A parsed system: field, variable names, polynomials.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub field: PrimeField,
    pub var_names: Vec<String>,
    pub polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|f| f.degree().unwrap_or(0)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.polys.iter().all(|f| f.is_homogeneous())
    }
}

pub fn parse_system(text: &str) -> Result<PolySystem> {
    let mut var_names: Option<Vec<String>> = None;
    let mut field: Option<PrimeField> = None;
    let mut polys = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            let names: Vec<String> = rest
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return Err(Error::InvalidInput("empty variable list".into()));
            }
            for name in &names {
                let mut chars = name.chars();
                let head_ok = chars
                    .next()
                    .map(|c| c.is_ascii_alphabetic() || c == '_')
                    .unwrap_or(false);
                if !head_ok || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(Error::InvalidInput(format!(
                        "invalid variable name `{name}`"
                    )));
                }
            }
            var_names = Some(names);
            continue;
        }
        if let Some(rest) = line.strip_prefix("p:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad modulus `{}`", rest.trim())))?;
            field = Some(PrimeField::new(p)?);
            continue;
        }
        let names = var_names
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("polynomial before `vars:` header".into()))?;
        let f = field
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("polynomial before `p:` header".into()))?;
        polys.push(Polynomial::parse(line, names, f)?);
    }
    let var_names = var_names.ok_or_else(|| Error::InvalidInput("missing `vars:` header".into()))?;
    let field = field.ok_or_else(|| Error::InvalidInput("missing `p:` header".into()))?;
    Ok(PolySystem {
        field,
        var_names,
        polys,
    })
}

pub fn read_system(path: &Path) -> Result<PolySystem> {
    parse_system(&std::fs::read_to_string(path)?)
}

/// Renders a system file; `comments` become leading `#` lines.
pub fn write_system(system: &PolySystem, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "vars: {}", system.var_names.join(","));
    let _ = writeln!(out, "p: {}", system.field.modulus());
    for f in &system.polys {
        let _ = writeln!(out, "{}", f.format(&system.var_names));
    }
    out
}

/// Homogenizes an affine system by appending one variable named `h`
/// (erroring if that name is taken): every term is padded with the power
/// of `h` that lifts it to its polynomial's total degree.
pub fn homogenize(system: &PolySystem) -> Result<PolySystem> {
    if system.var_names.iter().any(|v| v == "h") {
        return Err(Error::InvalidInput(
            "cannot homogenize: variable `h` already exists".into(),
        ));
    }
    let n = system.n_vars();
    let mut var_names = system.var_names.clone();
    var_names.push("h".into());
    let mut polys = Vec::with_capacity(system.polys.len());
    for f in &system.polys {
        let Some(d) = f.degree() else {
            polys.push(Polynomial::zero(n + 1));
            continue;
        };
        let terms = f.terms().map(|(m, &c)| {
            let mut exps = m.exponents().to_vec();
            exps.push((d - m.degree()) as u8);
            (Monomial::new(exps), c)
        });
        polys.push(Polynomial::from_terms(n + 1, terms, &system.field));
    }
    Ok(PolySystem {
        field: system.field,
        var_names,
        polys,
    })
}

/// The worked three-conic example over the given field: a projective
/// circle and two hyperbolas in variables (x, y, z, h), chosen so that
/// (1,1,1,1) is a common zero.
pub fn circles_system(field: PrimeField) -> PolySystem {
    let names = vec!["x".into(), "y".into(), "z".into(), "h".into()];
    let polys = [
        "x^2 + y^2 - 2*x*z - 2*y*z + z^2 + h^2",
        "x^2 + x*y + y*z - z^2 - 2*h^2",
        "x^2 - y^2 + 2*y*z - 2*z^2",
    ]
    .iter()
    .map(|s| Polynomial::parse(s, &names, &field).unwrap())
    .collect();
    PolySystem {
        field,
        var_names: names,
        polys,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let sys = circles_system(PrimeField::default_field());
        let text = write_system(&sys, &["demo".into()]);
        let back = parse_system(&text).unwrap();
        assert_eq!(back.var_names, sys.var_names);
        assert_eq!(back.field.modulus(), sys.field.modulus());
        assert_eq!(back.polys, sys.polys);
    }

    #[test]
    fn rejects_missing_headers() {
        assert!(parse_system("x^2 + 1").is_err());
        assert!(parse_system("vars: x\nx^2").is_err());
    }

    #[test]
    fn circles_solution_point() {
        // (1,1,1,1) must be a common zero
        let sys = circles_system(PrimeField::default_field());
        let f = &sys.field;
        for poly in &sys.polys {
            let mut acc = 0u64;
            for (_m, &c) in poly.terms() {
                acc = f.add(acc, c);
            }
            assert_eq!(acc, 0);
        }
    }

    #[test]
    fn homogenize_affine() {
        let f = PrimeField::default_field();
        let names = vec!["x".into(), "y".into()];
        let sys = PolySystem {
            field: f,
            var_names: names.clone(),
            polys: vec![Polynomial::parse("x^2 + y + 3", &names, &f).unwrap()],
        };
        let h = homogenize(&sys).unwrap();
        assert_eq!(h.var_names, vec!["x", "y", "h"]);
        assert!(h.polys[0].is_homogeneous());
        assert_eq!(h.polys[0].degree(), Some(2));
        let hn = h.var_names.clone();
        assert_eq!(h.polys[0].format(&hn), "x^2 + y*h + 3*h^2");
    }
}
