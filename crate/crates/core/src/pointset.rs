//! Point-set files and seeded generators.
//!
//! Text files hold one `x y` pair per line; `#` starts a comment, and the
//! header written by [`write_text`] records the format version and `n`.
//! JSON files are either a bare array of `[x, y]` pairs or an object
//! `{"version": 1, "n": .., "points": [[x, y], ..]}`. Coordinates are
//! integers of any size; JSON may give them as strings.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::geom::all_collinear;
use crate::{Error, Point, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Convex,
    Grid,
    Random,
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Self::Convex),
            "grid" => Ok(Self::Grid),
            "random" => Ok(Self::Random),
            _ => Err(Error::InvalidInput(format!("unknown generator {s:?}"))),
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Convex => "convex",
            Self::Grid => "grid",
            Self::Random => "random",
        })
    }
}

fn reject_duplicates(points: &[Point]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(p) {
            return Err(Error::InvalidInput(format!("duplicate point ({}, {})", p.x, p.y)));
        }
    }
    Ok(())
}

fn coord(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("bad integer coordinate {s:?}")))
}

/// Parses either format, detected by the first non-blank character.
pub fn parse(input: &str) -> Result<Vec<Point>> {
    match input.trim_start().chars().next() {
        Some('[') | Some('{') => parse_json(input),
        _ => parse_text(input),
    }
}

pub fn parse_text(input: &str) -> Result<Vec<Point>> {
    let mut declared = None;
    let mut points = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let (body, comment) = match line.find('#') {
            Some(i) => (&line[..i], Some(&line[i + 1..])),
            None => (line, None),
        };
        if let Some(c) = comment {
            for field in c.split_whitespace() {
                if let Some(v) = field.strip_prefix("n=") {
                    declared = Some(v.parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("bad header field {field:?}"))
                    })?);
                }
            }
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [x, y] => points.push(Point::new(coord(x)?, coord(y)?)),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected two integers",
                    lineno + 1
                )))
            }
        }
    }
    if let Some(n) = declared {
        if n != points.len() {
            return Err(Error::InvalidInput(format!(
                "header declares {n} points but {} were read",
                points.len()
            )));
        }
    }
    reject_duplicates(&points)?;
    Ok(points)
}

fn json_coord(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => coord(&n.to_string()),
        Value::String(s) => coord(s),
        _ => Err(Error::InvalidInput(format!("bad coordinate {v}"))),
    }
}

pub fn parse_json(input: &str) -> Result<Vec<Point>> {
    let value: Value =
        serde_json::from_str(input).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    let (array, declared) = match &value {
        Value::Array(a) => (a, None),
        Value::Object(o) => (
            o.get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("missing \"points\" array".into()))?,
            o.get("n").and_then(Value::as_u64),
        ),
        _ => return Err(Error::InvalidInput("expected an array or object".into())),
    };
    let points = array
        .iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok(Point::new(json_coord(x)?, json_coord(y)?)),
            _ => Err(Error::InvalidInput(format!("expected [x, y], got {pair}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = declared {
        if n as usize != points.len() {
            return Err(Error::InvalidInput(format!(
                "\"n\" is {n} but {} points were given",
                points.len()
            )));
        }
    }
    reject_duplicates(&points)?;
    Ok(points)
}

pub fn write_text(points: &[Point]) -> String {
    let mut out = format!("# tricount-points v{FORMAT_VERSION} n={}\n", points.len());
    for p in points {
        writeln!(out, "{} {}", p.x, p.y).expect("string write");
    }
    out
}

pub fn write_json(points: &[Point]) -> String {
    let pts: Vec<[String; 2]> = points.iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect();
    let body: Vec<Value> = pts
        .iter()
        .map(|[x, y]| {
            let num = |s: &str| s.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(s));
            Value::Array(vec![num(x), num(y)])
        })
        .collect();
    serde_json::json!({ "version": FORMAT_VERSION, "n": points.len(), "points": body }).to_string()
}

/// Deterministic point sets; the same `(kind, n, seed)` always gives the
/// same list.
///
/// * convex: `n` distinct seeded abscissae in `[-4n, 4n]` lifted to the
///   parabola `y = x^2`, sorted by `x`;
/// * grid: the first `n` points of the `m x m` grid, `m = ceil(sqrt n)`, row
///   by row (the seed is ignored);
/// * random: distinct uniform points of `[0, 4n]^2`, redrawn if all
///   collinear.
pub fn generate(kind: Generator, n: usize, seed: u64) -> Result<Vec<Point>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 points, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 4 * n as i64;
    Ok(match kind {
        Generator::Convex => {
            let mut xs = HashSet::new();
            let mut order = Vec::new();
            while order.len() < n {
                let x = rng.gen_range(-span..=span);
                if xs.insert(x) {
                    order.push(x);
                }
            }
            order.sort_unstable();
            order.into_iter().map(|x| Point::from_i64(x, x * x)).collect()
        }
        Generator::Grid => {
            let m = (n as f64).sqrt().ceil() as i64;
            let m = if (m - 1) * (m - 1) >= n as i64 { m - 1 } else { m };
            (0..m)
                .flat_map(|y| (0..m).map(move |x| Point::from_i64(x, y)))
                .take(n)
                .collect()
        }
        Generator::Random => loop {
            let mut seen = HashSet::new();
            let mut pts = Vec::with_capacity(n);
            while pts.len() < n {
                let p = (rng.gen_range(0..=span), rng.gen_range(0..=span));
                if seen.insert(p) {
                    pts.push(Point::from_i64(p.0, p.1));
                }
            }
            if !all_collinear(&pts) {
                break pts;
            }
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_prefix() {
        let g = generate(Generator::Grid, 9, 0).unwrap();
        let expect: Vec<Point> = (0..3)
            .flat_map(|y| (0..3).map(move |x| Point::from_i64(x, y)))
            .collect();
        assert_eq!(g, expect);
        assert_eq!(generate(Generator::Grid, 5, 0).unwrap().len(), 5);
    }

    #[test]
    fn deterministic() {
        for kind in [Generator::Convex, Generator::Random] {
            assert_eq!(generate(kind, 10, 7).unwrap(), generate(kind, 10, 7).unwrap());
            assert_ne!(generate(kind, 10, 7).unwrap(), generate(kind, 10, 8).unwrap());
        }
    }

    #[test]
    fn round_trips() {
        let p = generate(Generator::Random, 12, 3).unwrap();
        assert_eq!(parse(&write_text(&p)).unwrap(), p);
        assert_eq!(parse(&write_json(&p)).unwrap(), p);
        assert_eq!(parse("[[0,0],[\"1\",2],[3,\"-4\"]]").unwrap().len(), 3);
    }

    #[test]
    fn rejects() {
        assert!(parse("0 0\n1 1\n0 0\n").is_err());
        assert!(parse("# n=3\n0 0\n1 1\n").is_err());
        assert!(parse("0 0 0\n").is_err());
        assert!(parse("0 x\n").is_err());
        assert!(parse("[[0,0.5]]").is_err());
        assert!(generate(Generator::Convex, 2, 0).is_err());
    }

    #[test]
    fn huge_coordinates() {
        let p = parse("123456789012345678901234567890 1\n0 0\n1 0\n").unwrap();
        assert_eq!(p[0].x.to_string(), "123456789012345678901234567890");
        assert_eq!(parse(&write_json(&p)).unwrap(), p);
    }
}
