mod common;

#[test]
fn prefix_derivative_inverts_product() {
    common::prefix_derivative_inverts_product(200).unwrap();
}

#[test]
fn derivative_chain_rule() {
    common::derivative_chain_rule(200).unwrap();
}

#[test]
fn superpotential_derivative_symmetry() {
    common::superpotential_derivative_symmetry(200).unwrap();
}

#[test]
fn delta_commutes_with_idempotents() {
    common::delta_commutes_with_idempotents(200).unwrap();
}

#[test]
fn plain_shift_period_divides_degree() {
    common::plain_shift_period_divides_degree(200).unwrap();
}

#[test]
fn graded_maps_compose() {
    common::graded_maps_compose(200).unwrap();
}
