//! The `n × n × n` symbol array and its verifiers.
//!
//! `at(i, j, l)` is row `i`, column `j`, layer `l`, all 1-based. Symbols are
//! integers in `1..=n²`.

use std::fmt;

use thiserror::Error;

pub type Symbol = u32;

/// Verifier reports keep at most this many violations.
pub const MAX_VIOLATIONS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("expected {expected} cells, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("cell ({i},{j},{l}) holds symbol {symbol}, outside 1..={max}")]
    SymbolRange { i: usize, j: usize, l: usize, symbol: Symbol, max: u64 },
    #[error("layer must be {n}x{n}")]
    LayerShape { n: usize },
    #[error("cells {first:?} and {second:?} share an orbit but would hold {a} and {b}")]
    Conflict { first: (usize, usize, usize), second: (usize, usize, usize), a: Symbol, b: Symbol },
    #[error("cell {0:?} is undetermined")]
    Incomplete((usize, usize, usize)),
}

/// Which coordinate a layer fixes: `Row` is `L_{i**}`, `Column` is
/// `L_{*i*}`, `Layer` is `L_{**i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
    Layer,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Row, Axis::Column, Axis::Layer];

    /// Cell coordinates of entry `(a, b)` of layer `k` along this axis.
    pub fn cell(self, k: usize, a: usize, b: usize) -> (usize, usize, usize) {
        match self {
            Axis::Row => (k, a, b),
            Axis::Column => (a, k, b),
            Axis::Layer => (a, b, k),
        }
    }

    fn number(self) -> u8 {
        match self {
            Axis::Row => 1,
            Axis::Column => 2,
            Axis::Layer => 3,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axis {}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinCube {
    order: usize,
    cells: Vec<Symbol>,
}

impl LatinCube {
    /// `cells` is indexed `((i-1)·n + (j-1))·n + (l-1)`.
    pub fn new(order: usize, cells: Vec<Symbol>) -> Result<Self, CubeError> {
        if order == 0 {
            return Err(CubeError::ZeroOrder);
        }
        let expected = order * order * order;
        if cells.len() != expected {
            return Err(CubeError::CellCount { expected, got: cells.len() });
        }
        let max = (order * order) as u64;
        if let Some(pos) = cells.iter().position(|&s| s == 0 || u64::from(s) > max) {
            let (i, j, l) = unflatten(order, pos);
            return Err(CubeError::SymbolRange { i, j, l, symbol: cells[pos], max });
        }
        Ok(Self { order, cells })
    }

    /// Builds a cube from `at(i, j, l)`.
    pub fn from_fn(
        order: usize,
        mut at: impl FnMut(usize, usize, usize) -> Symbol,
    ) -> Result<Self, CubeError> {
        let mut cells = Vec::with_capacity(order * order * order);
        for i in 1..=order {
            for j in 1..=order {
                for l in 1..=order {
                    cells.push(at(i, j, l));
                }
            }
        }
        Self::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn at(&self, i: usize, j: usize, l: usize) -> Symbol {
        self.cells[flatten(self.order, i, j, l)]
    }

    /// The `n²` symbols of layer `k` along `axis`, row-major in the two free
    /// coordinates.
    pub fn layer(&self, axis: Axis, k: usize) -> Vec<Symbol> {
        let n = self.order;
        let mut out = Vec::with_capacity(n * n);
        for a in 1..=n {
            for b in 1..=n {
                let (i, j, l) = axis.cell(k, a, b);
                out.push(self.at(i, j, l));
            }
        }
        out
    }

    /// Same cube with two cells' symbols exchanged.
    pub fn with_swapped(&self, first: (usize, usize, usize), second: (usize, usize, usize)) -> LatinCube {
        let mut cells = self.cells.clone();
        cells.swap(
            flatten(self.order, first.0, first.1, first.2),
            flatten(self.order, second.0, second.1, second.2),
        );
        LatinCube { order: self.order, cells }
    }

    /// Same cube with one cell replaced; `symbol` must lie in `1..=n²`.
    pub fn with_cell(&self, cell: (usize, usize, usize), symbol: Symbol) -> Result<LatinCube, CubeError> {
        let mut cells = self.cells.clone();
        cells[flatten(self.order, cell.0, cell.1, cell.2)] = symbol;
        LatinCube::new(self.order, cells)
    }
}

fn flatten(n: usize, i: usize, j: usize, l: usize) -> usize {
    debug_assert!((1..=n).contains(&i) && (1..=n).contains(&j) && (1..=n).contains(&l));
    ((i - 1) * n + (j - 1)) * n + (l - 1)
}

fn unflatten(n: usize, pos: usize) -> (usize, usize, usize) {
    (pos / (n * n) + 1, (pos / n) % n + 1, pos % n + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeViolation {
    /// `symbol` occurs more than once in layer `index` along `axis`.
    RepeatedSymbol { axis: Axis, index: usize, symbol: Symbol },
    /// Two cells of one symmetry orbit disagree.
    Asymmetric {
        identity: &'static str,
        first: (usize, usize, usize),
        second: (usize, usize, usize),
        a: Symbol,
        b: Symbol,
    },
}

impl fmt::Display for CubeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RepeatedSymbol { axis, index, symbol } => {
                write!(f, "{axis}, layer {index}: symbol {symbol} repeated")
            }
            Self::Asymmetric { identity, first, second, a, b } => {
                write!(f, "{identity} broken: L{first:?} = {a} but L{second:?} = {b}")
            }
        }
    }
}

/// Bounded verifier output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CubeReport {
    pub violations: Vec<CubeViolation>,
    /// Set when more than [`MAX_VIOLATIONS`] were found.
    pub truncated: bool,
}

impl CubeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, v: CubeViolation) -> bool {
        if self.violations.len() == MAX_VIOLATIONS {
            self.truncated = true;
            return false;
        }
        self.violations.push(v);
        true
    }
}

impl fmt::Display for CubeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        if self.truncated {
            writeln!(f, "(further violations omitted)")?;
        }
        Ok(())
    }
}

/// Every layer along every axis must carry `n²` distinct symbols.
pub fn is_latin(cube: &LatinCube) -> CubeReport {
    let n = cube.order();
    let mut report = CubeReport::default();
    let mut seen = vec![false; n * n + 1];
    for axis in Axis::ALL {
        for k in 1..=n {
            seen.fill(false);
            for s in cube.layer(axis, k) {
                let s_idx = s as usize;
                if seen[s_idx] {
                    if !report.push(CubeViolation::RepeatedSymbol { axis, index: k, symbol: s }) {
                        return report;
                    }
                } else {
                    seen[s_idx] = true;
                }
            }
        }
    }
    report
}

const ROTATION: &str = "L_ijl = L_jli = L_lij";
const PAIR_IIJ: &str = "L_iij = L_jji";
const PAIR_IJI: &str = "L_iji = L_jij";
const PAIR_IJJ: &str = "L_ijj = L_jii";

/// Checks the cyclic identity for distinct indices and the three pair
/// identities for `i ≠ j`.
pub fn is_symmetric(cube: &LatinCube) -> CubeReport {
    let n = cube.order();
    let mut report = CubeReport::default();
    let mut compare = |identity, first: (usize, usize, usize), second: (usize, usize, usize)| {
        let a = cube.at(first.0, first.1, first.2);
        let b = cube.at(second.0, second.1, second.2);
        if a != b {
            report.push(CubeViolation::Asymmetric { identity, first, second, a, b });
        }
    };
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for l in 1..=n {
                if l != i && l != j {
                    compare(ROTATION, (i, j, l), (j, l, i));
                    compare(ROTATION, (i, j, l), (l, i, j));
                }
            }
            if i < j {
                compare(PAIR_IIJ, (i, i, j), (j, j, i));
                compare(PAIR_IJI, (i, j, i), (j, i, j));
                compare(PAIR_IJJ, (i, j, j), (j, i, i));
            }
        }
    }
    report
}

/// The symmetry orbit containing cell `(i, j, l)`, in canonical order
/// (smallest cell first).
///
/// Distinct indices give a 3-cycle, two equal indices a 2-orbit, and the
/// diagonal a singleton.
pub fn orbit(i: usize, j: usize, l: usize) -> Vec<(usize, usize, usize)> {
    let mut cells = if i != j && j != l && i != l {
        vec![(i, j, l), (j, l, i), (l, i, j)]
    } else if i == j && j == l {
        vec![(i, i, i)]
    } else if i == j {
        // (x,x,y) ~ (y,y,x)
        vec![(i, i, l), (l, l, i)]
    } else if i == l {
        // (x,y,x) ~ (y,x,y)
        vec![(i, j, i), (j, i, j)]
    } else {
        // (x,y,y) ~ (y,x,x)
        vec![(i, j, j), (j, i, i)]
    };
    cells.sort_unstable();
    cells
}

/// A cube with some cells still open, filled by propagating symbols across
/// symmetry orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialCube {
    order: usize,
    cells: Vec<Option<Symbol>>,
}

impl PartialCube {
    pub fn empty(order: usize) -> Result<Self, CubeError> {
        if order == 0 {
            return Err(CubeError::ZeroOrder);
        }
        Ok(Self { order, cells: vec![None; order * order * order] })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> Option<Symbol> {
        self.cells[flatten(self.order, i, j, l)]
    }

    pub fn determined(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Writes `symbol` into every cell of the orbit of `cell`.
    pub fn impose(&mut self, cell: (usize, usize, usize), symbol: Symbol) -> Result<(), CubeError> {
        let n = self.order;
        let max = (n * n) as u64;
        if symbol == 0 || u64::from(symbol) > max {
            return Err(CubeError::SymbolRange { i: cell.0, j: cell.1, l: cell.2, symbol, max });
        }
        let cells = orbit(cell.0, cell.1, cell.2);
        for &c in &cells {
            if let Some(existing) = self.cells[flatten(n, c.0, c.1, c.2)] {
                if existing != symbol {
                    return Err(CubeError::Conflict { first: cell, second: c, a: symbol, b: existing });
                }
            }
        }
        for c in cells {
            self.cells[flatten(n, c.0, c.1, c.2)] = Some(symbol);
        }
        Ok(())
    }

    /// Imposes an `n × n` layer (row-major in the two free coordinates).
    pub fn impose_layer(&mut self, axis: Axis, k: usize, layer: &[Symbol]) -> Result<(), CubeError> {
        let n = self.order;
        if layer.len() != n * n || !(1..=n).contains(&k) {
            return Err(CubeError::LayerShape { n });
        }
        for a in 1..=n {
            for b in 1..=n {
                self.impose(axis.cell(k, a, b), layer[(a - 1) * n + (b - 1)])?;
            }
        }
        Ok(())
    }

    pub fn into_cube(self) -> Result<LatinCube, CubeError> {
        let n = self.order;
        let mut cells = Vec::with_capacity(self.cells.len());
        for (pos, c) in self.cells.into_iter().enumerate() {
            cells.push(c.ok_or(CubeError::Incomplete(unflatten(n, pos)))?);
        }
        LatinCube::new(n, cells)
    }
}

/// Propagates one layer across its symmetry orbits.
pub fn symmetric_completion(layer: &[Symbol], axis: Axis, k: usize) -> Result<PartialCube, CubeError> {
    let n = (layer.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != layer.len() {
        return Err(CubeError::LayerShape { n });
    }
    let mut partial = PartialCube::empty(n)?;
    partial.impose_layer(axis, k, layer)?;
    Ok(partial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_two() -> LatinCube {
        // layer 1: [[1,2],[3,4]], layer 2: [[4,3],[2,1]]
        let layers = [[[1, 2], [3, 4]], [[4, 3], [2, 1]]];
        LatinCube::from_fn(2, |i, j, l| layers[l - 1][i - 1][j - 1]).unwrap()
    }

    #[test]
    fn order_two_example_is_symmetric_latin() {
        let c = order_two();
        assert!(is_latin(&c).passed());
        assert!(is_symmetric(&c).passed());
    }

    #[test]
    fn order_one() {
        let c = LatinCube::new(1, vec![1]).unwrap();
        assert!(is_latin(&c).passed());
        assert!(is_symmetric(&c).passed());
        assert!(LatinCube::new(1, vec![2]).is_err());
    }

    #[test]
    fn repeated_layers_fail_on_third_axis() {
        let layers = [[[1, 2], [3, 4]], [[1, 2], [3, 4]]];
        let c = LatinCube::from_fn(2, |i, j, l| layers[l - 1][i - 1][j - 1]).unwrap();
        let rep = is_latin(&c);
        assert!(!rep.passed());
        // layers along axis 3 are fine; rows and columns repeat
        assert_eq!(rep.violations[0], CubeViolation::RepeatedSymbol { axis: Axis::Row, index: 1, symbol: 1 });
        assert!(rep
            .violations
            .iter()
            .all(|v| !matches!(v, CubeViolation::RepeatedSymbol { axis: Axis::Layer, .. })));
    }

    #[test]
    fn swap_breaks_symmetry_identity() {
        let c = order_two().with_swapped((1, 1, 2), (1, 2, 1));
        let rep = is_symmetric(&c);
        assert!(!rep.passed());
        assert!(rep.to_string().contains("L_iij = L_jji") || rep.to_string().contains("L_iji"));
    }

    #[test]
    fn report_is_bounded() {
        let n = 5;
        let c = LatinCube::from_fn(n, |_, _, _| 1).unwrap();
        let rep = is_latin(&c);
        assert_eq!(rep.violations.len(), MAX_VIOLATIONS);
        assert!(rep.truncated);
    }

    #[test]
    fn orbit_structure() {
        let n = 6;
        let mut seen = vec![0usize; n * n * n];
        let (mut singles, mut pairs, mut triples) = (0, 0, 0);
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    let o = orbit(i, j, l);
                    assert!(o.contains(&(i, j, l)));
                    for &c in &o {
                        assert_eq!(orbit(c.0, c.1, c.2), o);
                    }
                    if o[0] == (i, j, l) {
                        match o.len() {
                            1 => singles += 1,
                            2 => pairs += 1,
                            3 => triples += 1,
                            _ => unreachable!(),
                        }
                        for c in o {
                            seen[flatten(n, c.0, c.1, c.2)] += 1;
                        }
                    }
                }
            }
        }
        assert!(seen.iter().all(|&k| k == 1));
        assert_eq!(singles, n);
        assert_eq!(pairs, 3 * n * (n - 1) / 2);
        assert_eq!(triples, 2 * n * (n - 1) * (n - 2) / 6);
    }

    #[test]
    fn completion_of_order_one() {
        let p = symmetric_completion(&[1], Axis::Row, 1).unwrap();
        assert_eq!(p.into_cube().unwrap(), LatinCube::new(1, vec![1]).unwrap());
    }

    #[test]
    fn completion_from_all_rows_rebuilds_cube() {
        let c = order_two();
        let mut p = PartialCube::empty(2).unwrap();
        for k in 1..=2 {
            p.impose_layer(Axis::Row, k, &c.layer(Axis::Row, k)).unwrap();
        }
        assert_eq!(p.into_cube().unwrap(), c);
    }

    #[test]
    fn conflicting_second_layer_is_rejected() {
        let c = order_two();
        let mut p = symmetric_completion(&c.layer(Axis::Row, 1), Axis::Row, 1).unwrap();
        let mut second = c.layer(Axis::Row, 2);
        // entry (1,2) of layer i=2 is L_212, which must equal L_121
        second[1] = if second[1] == 1 { 2 } else { 1 };
        let err = p.impose_layer(Axis::Row, 2, &second).unwrap_err();
        assert!(matches!(err, CubeError::Conflict { first: (2, 1, 2), second: (1, 2, 1), .. }));
    }

    #[test]
    fn incomplete_partial_cube() {
        let p = symmetric_completion(&[1, 2, 3, 4], Axis::Row, 1).unwrap();
        assert!(matches!(p.into_cube(), Err(CubeError::Incomplete(_))));
    }
}
