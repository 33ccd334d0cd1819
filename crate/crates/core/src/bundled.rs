//! Example arrangements shipped with the crate.

use crate::arrangement::Arrangement;

pub struct Bundled {
    pub name: &'static str,
    pub description: &'static str,
    pub json: &'static str,
}

/// The smooth examples with a nonempty polytope.
pub const SMOOTH: [Bundled; 6] = [
    Bundled {
        name: "t-star-c",
        description: "one point on a line (cotangent bundle of C)",
        json: include_str!("../data/t_star_c.json"),
    },
    Bundled {
        name: "t-star-cp1",
        description: "two points bounding a segment (cotangent bundle of CP^1)",
        json: include_str!("../data/t_star_cp1.json"),
    },
    Bundled {
        name: "hirzebruch",
        description: "four lines bounding a Hirzebruch trapezoid",
        json: include_str!("../data/hirzebruch.json"),
    },
    Bundled {
        name: "ma",
        description: "four lines with ideal <u2u3, u1(x-u2)u4, u1u3u4>",
        json: include_str!("../data/ma.json"),
    },
    Bundled {
        name: "mb",
        description: "four lines with ideal <(x-u2)u3, u1u2u4, u1u3u4>",
        json: include_str!("../data/mb.json"),
    },
    Bundled {
        name: "mc",
        description: "four lines with ideal <u2u3, (x-u1)u2(x-u4), u1u3u4>",
        json: include_str!("../data/mc.json"),
    },
];

/// Inputs that fail validation on purpose.
pub const INVALID: [Bundled; 2] = [
    Bundled {
        name: "concurrent-lines",
        description: "three lines through the origin (not simple)",
        json: include_str!("../data/concurrent_lines.json"),
    },
    Bundled {
        name: "nonsmooth",
        description: "two lines meeting with determinant 2 (not smooth)",
        json: include_str!("../data/nonsmooth.json"),
    },
];

impl Bundled {
    pub fn arrangement(&self) -> Arrangement {
        Arrangement::parse(self.json).expect("bundled arrangement parses")
    }
}

pub fn by_name(name: &str) -> Option<&'static Bundled> {
    SMOOTH.iter().chain(INVALID.iter()).find(|b| b.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for b in SMOOTH.iter().chain(INVALID.iter()) {
            let a = b.arrangement();
            assert!(a.warnings().iter().all(|w| !w.contains("primitive")), "{}", b.name);
        }
        assert!(by_name("ma").is_some());
        assert!(by_name("nope").is_none());
    }
}
