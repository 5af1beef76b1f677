//! Scenarios shipped with the binary.

pub const BUNDLED: &[(&str, &str)] = &[
    (
        "trivial-extension-depth",
        include_str!("../scenarios/trivial-extension-depth.cm"),
    ),
    ("valuation-pair", include_str!("../scenarios/valuation-pair.cm")),
    (
        "trivial-extension-not-cm",
        include_str!("../scenarios/trivial-extension-not-cm.cm"),
    ),
    ("subring-colon", include_str!("../scenarios/subring-colon.cm")),
    (
        "sign-action-invariants",
        include_str!("../scenarios/sign-action-invariants.cm"),
    ),
    (
        "unbounded-annihilators",
        include_str!("../scenarios/unbounded-annihilators.cm"),
    ),
    (
        "polynomial-ring-pool",
        include_str!("../scenarios/polynomial-ring-pool.cm"),
    ),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
