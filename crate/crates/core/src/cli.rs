//! Cube file formats and the command handlers behind the `symcube` binary.
//!
//! Grid format:
//!
//! ```text
//! order 2
//!
//! 1 2
//! 3 4
//!
//! 4 3
//! 2 1
//! ```
//!
//! The `k`-th block of rows is layer `l = k`; within a block, line `i` is
//! row `i` and the `j`-th number is column `j`. Lines starting with `#` are
//! comments.
//!
//! JSON format: `{"order": n, "cells": [[[..]]], "symbols": n²}` with
//! `cells[i][j][l]`, 0-based in the array but holding `at(i+1, j+1, l+1)`.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 infeasible order, 3 parse or
//! I/O error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convert::{cube_to_partition, partition_to_cube};
use crate::cube::{is_latin, is_symmetric, LatinCube, Symbol};
use crate::equations::{feasible, solve_system, EquationsError};
use crate::lifting::{construct_cube_with, ConstructOptions, LiftError};
use crate::oracle::{brute_partition_exists, MAX_PARTITION_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Grid { line: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
    #[error("input is empty")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Grid,
    Json,
}

pub fn write_grid(cube: &LatinCube) -> String {
    let n = cube.order();
    let mut s = String::new();
    writeln!(s, "order {n}").unwrap();
    for l in 1..=n {
        s.push('\n');
        for i in 1..=n {
            let row: Vec<String> = (1..=n).map(|j| cube.at(i, j, l).to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
    }
    s
}

pub fn parse_grid(text: &str) -> Result<LatinCube, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.starts_with('#'));
    let (header_line, header) = lines.by_ref().find(|(_, l)| !l.is_empty()).ok_or(ParseError::Empty)?;
    let grid_err = |line, msg: String| ParseError::Grid { line, msg };
    let n: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| grid_err(header_line, format!("expected `order N`, found `{header}`")))?;

    // layers[l][i][j]
    let mut layers: Vec<Vec<Vec<Symbol>>> = Vec::new();
    let mut current: Vec<Vec<Symbol>> = Vec::new();
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if content.is_empty() {
            if !current.is_empty() {
                if current.len() != n {
                    return Err(grid_err(line, format!("layer has {} rows, expected {n}", current.len())));
                }
                layers.push(std::mem::take(&mut current));
            }
            continue;
        }
        if layers.len() == n {
            return Err(grid_err(line, format!("more than {n} layers")));
        }
        let row: Vec<Symbol> = content
            .split_whitespace()
            .map(|tok| tok.parse::<Symbol>().map_err(|_| grid_err(line, format!("bad symbol `{tok}`"))))
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(grid_err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        current.push(row);
        if current.len() > n {
            return Err(grid_err(line, format!("layer has more than {n} rows")));
        }
    }
    if !current.is_empty() {
        if current.len() != n {
            return Err(grid_err(last_line, format!("layer has {} rows, expected {n}", current.len())));
        }
        layers.push(current);
    }
    if layers.len() != n {
        return Err(grid_err(last_line, format!("found {} layers, expected {n}", layers.len())));
    }
    LatinCube::from_fn(n, |i, j, l| layers[l - 1][i - 1][j - 1])
        .map_err(|e| grid_err(header_line, e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct CubeJson {
    order: usize,
    cells: Vec<Vec<Vec<Symbol>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbols: Option<u64>,
}

pub fn write_json(cube: &LatinCube) -> String {
    let n = cube.order();
    let cells =
        (1..=n).map(|i| (1..=n).map(|j| (1..=n).map(|l| cube.at(i, j, l)).collect()).collect()).collect();
    let doc = CubeJson { order: n, cells, symbols: Some((n * n) as u64) };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<LatinCube, ParseError> {
    let doc: CubeJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let n = doc.order;
    if n == 0 {
        return Err(ParseError::Json("order must be at least 1".into()));
    }
    if let Some(s) = doc.symbols {
        if s != (n * n) as u64 {
            return Err(ParseError::Json(format!("symbols is {s}, expected {}", n * n)));
        }
    }
    let shape_ok =
        doc.cells.len() == n && doc.cells.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n));
    if !shape_ok {
        return Err(ParseError::Json(format!("cells must be {n}x{n}x{n}")));
    }
    LatinCube::from_fn(n, |i, j, l| doc.cells[i - 1][j - 1][l - 1])
        .map_err(|e| ParseError::Json(e.to_string()))
}

/// Picks the format from the first non-blank character.
pub fn parse_cube(text: &str) -> Result<LatinCube, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_grid(text)
    }
}

pub fn render(cube: &LatinCube, format: Format) -> String {
    match format {
        Format::Grid => write_grid(cube),
        Format::Json => {
            let mut s = write_json(cube);
            s.push('\n');
            s
        }
    }
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

pub fn cmd_construct(
    order: usize,
    seed: u64,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let opts = ConstructOptions { seed, ..Default::default() };
    let cube = match construct_cube_with(order, &opts) {
        Ok(c) => c,
        Err(LiftError::Equations(e @ EquationsError::Infeasible { .. })) => {
            let _ = writeln!(err, "{e}");
            return EXIT_INFEASIBLE;
        }
        Err(LiftError::Equations(e @ EquationsError::ZeroOrder)) => {
            let _ = writeln!(err, "{e}");
            return EXIT_IO;
        }
        Err(e) => {
            // construction invariant broken; never expected
            let _ = writeln!(err, "internal error: {e}");
            return EXIT_VERIFY_FAILED;
        }
    };
    let text = render(&cube, format);
    let written = match output {
        Some(p) if p != Path::new("-") => std::fs::write(p, text),
        _ => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "write failed: {e}");
            EXIT_IO
        }
    }
}

pub fn cmd_verify(input: &str, deep: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{input}: {e}");
            return EXIT_IO;
        }
    };
    let cube = match parse_cube(&text) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "{input}: {e}");
            return EXIT_IO;
        }
    };
    verify_cube(&cube, deep, out)
}

/// Runs the verifiers (and with `deep` the partition and oracle checks),
/// printing one line per check.
pub fn verify_cube(cube: &LatinCube, deep: bool, out: &mut dyn Write) -> i32 {
    let n = cube.order();
    let mut ok = true;
    let _ = writeln!(out, "order {n}");
    let latin = is_latin(cube);
    let sym = is_symmetric(cube);
    for (name, rep) in [("latin", &latin), ("symmetric", &sym)] {
        if rep.passed() {
            let _ = writeln!(out, "{name}: ok");
        } else {
            ok = false;
            let _ = writeln!(out, "{name}: FAILED");
            for line in rep.to_string().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    if deep && ok {
        match cube_to_partition(cube) {
            Ok(p) => {
                let _ = writeln!(out, "partition: ok ({} classes)", p.classes().len());
                let rebuilt = partition_to_cube(&p).and_then(|c| cube_to_partition(&c));
                match rebuilt {
                    Ok(q) if q.same_multiset(&p) => {
                        let _ = writeln!(out, "round trip: ok");
                    }
                    _ => {
                        ok = false;
                        let _ = writeln!(out, "round trip: FAILED");
                    }
                }
            }
            Err(e) => {
                ok = false;
                let _ = writeln!(out, "partition: FAILED ({e})");
            }
        }
        if let Err(e) = feasible(n) {
            ok = false;
            let _ = writeln!(out, "feasibility: FAILED ({e})");
        }
        if n <= MAX_PARTITION_ORDER {
            match brute_partition_exists(n) {
                Ok(true) => {
                    let _ = writeln!(out, "oracle: ok");
                }
                _ => {
                    ok = false;
                    let _ = writeln!(out, "oracle: FAILED (exhaustive search finds no partition)");
                }
            }
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

pub fn cmd_solve_system(order: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match solve_system(order) {
        Ok(sol) => {
            let mut s = String::new();
            for t in sol.triples() {
                writeln!(s, "{t}").unwrap();
            }
            match out.write_all(s.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(_) => EXIT_IO,
            }
        }
        Err(e @ EquationsError::Infeasible { .. }) => {
            let _ = writeln!(err, "{e}");
            EXIT_INFEASIBLE
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            EXIT_IO
        }
    }
}

pub fn cmd_info(order: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match feasible(order) {
        Ok(()) => {
            let _ = writeln!(out, "feasible");
            EXIT_OK
        }
        Err(EquationsError::Infeasible { reason, .. }) => {
            let _ = writeln!(out, "infeasible: {reason}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            EXIT_IO
        }
    }
}
