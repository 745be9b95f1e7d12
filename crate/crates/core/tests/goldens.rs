use isomub::fiducials::{sporadic_triplet, FiducialRecipe};
use isomub::io::{fixtures, format_many, LogMatrix};
use isomub::states::DigitOrder;
use isomub::verify::{butson_class, hadamard_from_basis, partition_orbit};
use isomub::wh::{WhGroup, WhIndex};

fn first_log(recipe: &FiducialRecipe, root: u32) -> LogMatrix {
    let set = partition_orbit(&recipe.phase_state().unwrap()).unwrap();
    LogMatrix::from_matrix(&hadamard_from_basis(&set.bases[0]), root, false, 1e-9).unwrap()
}

#[test]
fn h9_reproduced_with_pinned_ring() {
    let r = FiducialRecipe::ring(2, 2).with_poly(vec![2, 1, 1]);
    let log = first_log(&r, 9);
    assert_eq!(log.to_string(), fixtures::H9_LOG);
    let set = partition_orbit(&r.phase_state().unwrap()).unwrap();
    assert_eq!(butson_class(&hadamard_from_basis(&set.bases[0]), 30, 1e-9), Some(9));
}

#[test]
fn h25_reproduced_with_pinned_field() {
    let r = FiducialRecipe::field(5, 2, 2).with_poly(vec![2, 4, 1]).with_order(DigitOrder::Little);
    let log = first_log(&r, 5);
    assert_eq!(log.to_string(), fixtures::H25_LOG);
    let set = partition_orbit(&r.phase_state().unwrap()).unwrap();
    assert_eq!(butson_class(&hadamard_from_basis(&set.bases[0]), 30, 1e-9), Some(5));
}

#[test]
fn sporadic_family_zero_matches_fixture() {
    let psi = sporadic_triplet();
    let profile = psi[0].profile().clone();
    let g = WhGroup::new(&profile);
    let mut logs = Vec::new();
    for l in 0..3 {
        for j in 0..3 {
            let basis: Vec<_> = (0..9)
                .map(|k| {
                    let idx = WhIndex::new(vec![(3 - j) % 3, 0], vec![k / 3, k % 3]);
                    g.apply(&psi[l].to_amplitudes(), &idx).unwrap()
                })
                .collect();
            logs.push(LogMatrix::from_matrix(&hadamard_from_basis(&basis), 3, true, 1e-9).unwrap());
        }
    }
    assert_eq!(format_many(&logs), fixtures::SPORADIC_FAMILY0_LOG);
}
