macro_rules! scenarios {
    ($($name:literal),* $(,)?) => {
        /// Scenarios shipped with the library, by name.
        pub const BUNDLED: &[(&str, &str)] = &[$(($name, include_str!(concat!("../../scenarios/", $name, ".scn")))),*];
    };
}

scenarios!(
    "cubic_truncation",
    "two_variable_alternation",
    "node_alternation",
    "fiber_product_residue",
    "lifted_koszul",
    "stretched_periodicity",
    "socle_splice",
    "converse_shamash",
    "lifted_periodicity",
    "property_suites",
);

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
