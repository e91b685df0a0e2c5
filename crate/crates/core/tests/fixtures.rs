mod support;

use sha2::{Digest, Sha256};
use support::*;
use symcube::blocks::ParallelClass;
use symcube::cli::write_grid;
use symcube::cube::{symmetric_completion, Axis, CubeError, PartialCube};
use symcube::{cube_to_partition, is_latin, is_symmetric, partition_to_cube};

const CHECKSUMS: [(&str, &str); 4] = [
    (ORDER2, "f36b95bc900ccce9bb942fd80a4bd34fbc78449ea780254bdddab38fe387f127"),
    (ORDER5, "c4f1f50a020a77a5ad64a4dff16f38291d0e240a2153ceb6e0d3af921e32f248"),
    (ORDER6, "fb93c945166d53e88e6f5429343d29d89ef2bbbd42c62afdf359b5b94edf416c"),
    (ORDER8, "278522cfc6d3fed2204844a0507dbeb3275c24852e3d2ccdd0fa12e58bf7d5b1"),
];

#[test]
fn checksums_match_notes() {
    for (text, sum) in CHECKSUMS {
        let normalized = write_grid(&fixture(text));
        assert_eq!(hex::encode(Sha256::digest(normalized.as_bytes())), sum);
    }
}

#[test]
fn fixtures_are_symmetric_latin_cubes() {
    for (text, _) in CHECKSUMS {
        let c = fixture(text);
        assert!(is_latin(&c).passed(), "order {}: {}", c.order(), is_latin(&c));
        assert!(is_symmetric(&c).passed(), "order {}: {}", c.order(), is_symmetric(&c));
    }
}

/// The order-5 classes in their listed order, `xyz` meaning `{x,y,z}`.
const ORDER5_CLASSES: &str = "12,345;34,125;15,234;25,134;45,123;14,235;34,125;13,245;\
23,145;25,134;13,245;14,235;35,124;45,123;24,135;35,124;24,135;15,234;12,345;23,145;\
4,15,23;3,14,25;1,24,35;5,12,34;2,13,45";

fn listed_classes() -> Vec<ParallelClass> {
    ORDER5_CLASSES
        .split(';')
        .map(|class| {
            ParallelClass::new(
                class.split(',').map(|b| b.chars().map(|ch| ch.to_digit(10).unwrap()).collect::<Vec<u32>>()),
            )
        })
        .collect()
}

#[test]
fn order_five_reads_back_as_listed_classes() {
    let p = cube_to_partition(&fixture(ORDER5)).unwrap();
    assert_eq!(p.classes(), listed_classes().as_slice());
}

#[test]
fn order_five_partition_rebuilds_a_valid_cube() {
    let cube = fixture(ORDER5);
    let p = cube_to_partition(&cube).unwrap();
    let rebuilt = partition_to_cube(&p).unwrap();
    assert!(is_latin(&rebuilt).passed() && is_symmetric(&rebuilt).passed());
    assert!(cube_to_partition(&rebuilt).unwrap().same_multiset(&p));
    // the canonical orbit assignment may differ from the printed one, but
    // diagonals are forced
    for i in 1..=5 {
        assert_eq!(rebuilt.at(i, i, i), cube.at(i, i, i));
    }
}

#[test]
fn larger_fixtures_convert_to_partitions() {
    for text in [ORDER6, ORDER8] {
        let c = fixture(text);
        let p = cube_to_partition(&c).unwrap();
        assert_eq!(p.classes().len(), c.order() * c.order());
        assert!(p.validate().is_ok());
    }
}

#[test]
fn completion_from_one_layer_agrees_with_fixture() {
    let cube = fixture(ORDER5);
    for axis in Axis::ALL {
        let p = symmetric_completion(&cube.layer(axis, 1), axis, 1).unwrap();
        let mut determined = 0;
        for i in 1..=5 {
            for j in 1..=5 {
                for l in 1..=5 {
                    if let Some(s) = p.get(i, j, l) {
                        assert_eq!(s, cube.at(i, j, l));
                        determined += 1;
                    }
                }
            }
        }
        assert_eq!(determined, p.determined());
        assert!(determined > 25);
    }
}

#[test]
fn completion_from_all_rows_reproduces_fixture() {
    let cube = fixture(ORDER8);
    let mut p = PartialCube::empty(8).unwrap();
    for k in 1..=8 {
        p.impose_layer(Axis::Row, k, &cube.layer(Axis::Row, k)).unwrap();
    }
    assert_eq!(p.into_cube().unwrap(), cube);
}

#[test]
fn mutated_second_layer_conflicts() {
    let cube = fixture(ORDER5);
    let mut p = symmetric_completion(&cube.layer(Axis::Row, 1), Axis::Row, 1).unwrap();
    let mut second = cube.layer(Axis::Row, 2);
    // entry (1,2) of L_2** is L_212, tied to L_121
    second[1] = second[1] % 25 + 1;
    match p.impose_layer(Axis::Row, 2, &second) {
        Err(CubeError::Conflict { first, second, .. }) => {
            assert_eq!(first, (2, 1, 2));
            assert_eq!(second, (1, 2, 1));
        }
        other => panic!("expected conflict, got {other:?}"),
    }
}

#[test]
fn swapped_cells_name_broken_identity() {
    let c = fixture(ORDER8).with_swapped((1, 2, 3), (1, 3, 2));
    let rep = is_symmetric(&c);
    assert!(!rep.passed());
    assert!(rep.to_string().contains("L_ijl = L_jli = L_lij"), "{rep}");
}
