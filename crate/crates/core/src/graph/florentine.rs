use super::{parse_edge_list, Graph};

/// Checked-in edge list of the Florentine families marriage network.
pub const FLORENTINE_EDGE_LIST: &str = include_str!("../../data/florentine_families.txt");
/// Manifest (names, degree sequence, provenance) for [`FLORENTINE_EDGE_LIST`].
pub const FLORENTINE_MANIFEST: &str = include_str!("../../data/florentine_families.json");

const NAMES: [&str; 15] = [
    "Acciaiuoli",
    "Albizzi",
    "Barbadori",
    "Bischeri",
    "Castellani",
    "Ginori",
    "Guadagni",
    "Lamberteschi",
    "Medici",
    "Pazzi",
    "Peruzzi",
    "Ridolfi",
    "Salviati",
    "Strozzi",
    "Tornabuoni",
];

/// The 15-family marriage-tie network (connected component; Pucci omitted).
pub fn florentine_families() -> Graph {
    parse_edge_list(FLORENTINE_EDGE_LIST).expect("embedded Florentine edge list is valid")
}

/// Family names indexed by node id.
pub fn florentine_family_names() -> &'static [&'static str] {
    &NAMES
}
