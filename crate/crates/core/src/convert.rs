//! Symmetric cubes and parallel-class partitions determine each other.
//!
//! Symbol `c` of a cube corresponds to class `c` of the partition. Reading a
//! cube, `{i}` goes to the class of `L_iii`, each pair `{i,j}` to the classes
//! of its three 2-orbits, and each triple to the classes of its two 3-cycles.

use thiserror::Error;

use crate::blocks::{ParallelClass, Partition, PartitionError, Point};
use crate::cube::{is_latin, is_symmetric, CubeReport, LatinCube, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("cube is not latin:\n{0}")]
    NotLatin(CubeReport),
    #[error("cube is not symmetric:\n{0}")]
    NotSymmetric(CubeReport),
    #[error("malformed partition: {0}")]
    Partition(#[from] PartitionError),
}

pub fn cube_to_partition(cube: &LatinCube) -> Result<Partition, ConvertError> {
    let latin = is_latin(cube);
    if !latin.passed() {
        return Err(ConvertError::NotLatin(latin));
    }
    let sym = is_symmetric(cube);
    if !sym.passed() {
        return Err(ConvertError::NotSymmetric(sym));
    }
    let n = cube.order();
    let mut classes: Vec<Vec<Vec<Point>>> = vec![Vec::new(); n * n];
    let mut put = |symbol: Symbol, block: Vec<Point>| classes[symbol as usize - 1].push(block);
    for i in 1..=n {
        put(cube.at(i, i, i), vec![i as Point]);
        for j in i + 1..=n {
            let pair = vec![i as Point, j as Point];
            for s in [cube.at(i, i, j), cube.at(i, j, i), cube.at(i, j, j)] {
                put(s, pair.clone());
            }
            for l in j + 1..=n {
                let triple = vec![i as Point, j as Point, l as Point];
                put(cube.at(i, j, l), triple.clone());
                put(cube.at(j, i, l), triple);
            }
        }
    }
    let partition = Partition::new(n, classes.into_iter().map(ParallelClass::new).collect());
    partition.validate()?;
    Ok(partition)
}

/// Class `k` (0-based) becomes symbol `k + 1`.
///
/// For a pair `i < j` with colours `c < c' < c''`: `c` fills
/// `(L_iij, L_jji)`, `c'` fills `(L_iji, L_jij)`, `c''` fills
/// `(L_ijj, L_jii)`. For a triple `i < j < l` the smaller colour fills the
/// cycle through `L_ijl`, the larger the cycle through `L_jil`.
pub fn partition_to_cube(partition: &Partition) -> Result<LatinCube, ConvertError> {
    partition.validate()?;
    let n = partition.order();
    let idx = |i: usize, j: usize, l: usize| ((i - 1) * n + (j - 1)) * n + (l - 1);
    let mut colours: std::collections::BTreeMap<&[Point], Vec<Symbol>> = Default::default();
    for (k, class) in partition.classes().iter().enumerate() {
        for b in class.blocks() {
            colours.entry(b.as_slice()).or_default().push(k as Symbol + 1);
        }
    }
    let mut cells = vec![0; n * n * n];
    for (block, mut cs) in colours {
        cs.sort_unstable();
        match *block {
            [i] => {
                let i = i as usize;
                cells[idx(i, i, i)] = cs[0];
            }
            [i, j] => {
                let (i, j) = (i as usize, j as usize);
                cells[idx(i, i, j)] = cs[0];
                cells[idx(j, j, i)] = cs[0];
                cells[idx(i, j, i)] = cs[1];
                cells[idx(j, i, j)] = cs[1];
                cells[idx(i, j, j)] = cs[2];
                cells[idx(j, i, i)] = cs[2];
            }
            [i, j, l] => {
                let (i, j, l) = (i as usize, j as usize, l as usize);
                cells[idx(i, j, l)] = cs[0];
                cells[idx(j, l, i)] = cs[0];
                cells[idx(l, i, j)] = cs[0];
                cells[idx(j, i, l)] = cs[1];
                cells[idx(i, l, j)] = cs[1];
                cells[idx(l, j, i)] = cs[1];
            }
            _ => unreachable!("validated partition has blocks of size 1..=3"),
        }
    }
    let cube = LatinCube::new(n, cells).expect("validated partition fills every cell");
    debug_assert!(is_latin(&cube).passed() && is_symmetric(&cube).passed());
    Ok(cube)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_two() -> LatinCube {
        let layers = [[[1, 2], [3, 4]], [[4, 3], [2, 1]]];
        LatinCube::from_fn(2, |i, j, l| layers[l - 1][i - 1][j - 1]).unwrap()
    }

    #[test]
    fn order_one_round_trip() {
        let c = LatinCube::new(1, vec![1]).unwrap();
        let p = cube_to_partition(&c).unwrap();
        assert_eq!(p.classes(), &[ParallelClass::new([vec![1]])]);
        assert_eq!(partition_to_cube(&p).unwrap(), c);
    }

    #[test]
    fn order_two_classes() {
        // L_111 = 1, L_222 = 1; pair cells L_112 = 4, L_121 = 2, L_122 = 3
        let p = cube_to_partition(&order_two()).unwrap();
        let expected = vec![
            ParallelClass::new([vec![1], vec![2]]),
            ParallelClass::new([vec![1, 2]]),
            ParallelClass::new([vec![1, 2]]),
            ParallelClass::new([vec![1, 2]]),
        ];
        assert_eq!(p.classes(), expected.as_slice());
        let back = partition_to_cube(&p).unwrap();
        assert!(is_latin(&back).passed());
        assert!(is_symmetric(&back).passed());
        assert!(cube_to_partition(&back).unwrap().same_multiset(&p));
    }

    #[test]
    fn rejects_non_symmetric_cube() {
        let c = order_two().with_swapped((1, 1, 2), (1, 2, 1));
        assert!(matches!(
            cube_to_partition(&c),
            Err(ConvertError::NotSymmetric(_)) | Err(ConvertError::NotLatin(_))
        ));
    }

    #[test]
    fn rejects_malformed_partition() {
        let p = Partition::new(
            2,
            vec![
                ParallelClass::new([vec![1], vec![2]]),
                ParallelClass::new([vec![1, 2]]),
                ParallelClass::new([vec![1, 2]]),
                ParallelClass::new([vec![1], vec![2]]),
            ],
        );
        assert!(matches!(partition_to_cube(&p), Err(ConvertError::Partition(_))));
    }
}
