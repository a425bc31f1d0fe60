//! Randomized and exhaustive checks against brute-force oracles.

mod common;

macro_rules! battery {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

battery!(
    perm_laws,
    bsgs_matches_closure,
    lagrange_orbit_stabilizer,
    coset_action_kernel,
    signature_invariant,
    certificate_symmetry,
    arith_laws,
    normal_cyclic,
    semiregular_cyclic,
    semiregular_cyclic_sampled,
    direct_product_bound,
    exponent_bound,
    witness_oracle,
    search_oracle,
);

#[test]
fn battery_lists_every_check() {
    assert_eq!(common::BATTERY.len(), 14);
}
