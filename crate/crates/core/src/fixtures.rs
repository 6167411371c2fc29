//! Bundled example diagrams. Each file under `fixtures/` carries a `comment`
//! naming its source; the tests below rebuild every file from a braid,
//! pretzel or hand-wired [`Builder`](crate::diagram::build::Builder)
//! description and require byte-identical JSON.

use crate::diagram::Diagram;

pub const UNKNOT: &str = include_str!("../fixtures/unknot.json");
pub const UNLINK2: &str = include_str!("../fixtures/unlink2.json");
pub const TREFOIL: &str = include_str!("../fixtures/trefoil.json");
pub const TREFOIL_LEFT: &str = include_str!("../fixtures/trefoil_left.json");
pub const HOPF: &str = include_str!("../fixtures/hopf.json");
pub const TWIST4_TANGLE: &str = include_str!("../fixtures/twist4_tangle.json");
pub const CUT_TREFOIL_TANGLE: &str = include_str!("../fixtures/cut_trefoil_tangle.json");
pub const PRETZEL_3_2_M3: &str = include_str!("../fixtures/pretzel_3_2_-3.json");
pub const PRETZEL_4_4: &str = include_str!("../fixtures/pretzel_4_4.json");
pub const LINK_7_2_5: &str = include_str!("../fixtures/link_7_2_5.json");

/// `(name, json)` for every bundled diagram.
pub const ALL: [(&str, &str); 10] = [
    ("unknot", UNKNOT),
    ("unlink2", UNLINK2),
    ("trefoil", TREFOIL),
    ("trefoil_left", TREFOIL_LEFT),
    ("hopf", HOPF),
    ("twist4_tangle", TWIST4_TANGLE),
    ("cut_trefoil_tangle", CUT_TREFOIL_TANGLE),
    ("pretzel_3_2_-3", PRETZEL_3_2_M3),
    ("pretzel_4_4", PRETZEL_4_4),
    ("link_7_2_5", LINK_7_2_5),
];

fn load(json: &str) -> Diagram {
    Diagram::from_json(json).expect("bundled fixture is valid")
}

pub fn by_name(name: &str) -> Option<Diagram> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, j)| load(j))
}

pub fn unknot() -> Diagram {
    load(UNKNOT)
}

pub fn unlink2() -> Diagram {
    load(UNLINK2)
}

pub fn trefoil() -> Diagram {
    load(TREFOIL)
}

pub fn trefoil_left() -> Diagram {
    load(TREFOIL_LEFT)
}

pub fn hopf() -> Diagram {
    load(HOPF)
}

/// Two parallel upward strands with four positive half-twists.
pub fn twist4_tangle() -> Diagram {
    load(TWIST4_TANGLE)
}

/// Left-handed trefoil with one edge cut twice; its middle piece is a
/// crossingless strand.
pub fn cut_trefoil_tangle() -> Diagram {
    load(CUT_TREFOIL_TANGLE)
}

pub fn pretzel_3_2_m3() -> Diagram {
    load(PRETZEL_3_2_M3)
}

pub fn pretzel_4_4() -> Diagram {
    load(PRETZEL_4_4)
}

pub fn link_7_2_5() -> Diagram {
    load(LINK_7_2_5)
}
