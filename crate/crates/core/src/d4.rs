//! The dihedral group of order 8 acting on Leonard systems.
//!
//! The three generators are written `star` (exchange the two operators),
//! `down` (reverse the dual idempotent ordering), and `ddown` (reverse the
//! primal idempotent ordering). They satisfy
//!
//! ```text
//! star^2 = down^2 = ddown^2 = 1,
//! ddown star = star down,   down star = star ddown,   down ddown = ddown down,
//! ```
//!
//! and generate a dihedral group with 8 elements. Words compose left to
//! right: `apply(apply(p, g), h) = apply(p, g * h)`.

use std::fmt;
use std::str::FromStr;

/// A group element in the canonical form `star^s down^a ddown^b`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct D4Element {
    star: bool,
    down: bool,
    ddown: bool,
}

impl D4Element {
    pub const IDENTITY: D4Element = D4Element {
        star: false,
        down: false,
        ddown: false,
    };
    pub const STAR: D4Element = D4Element {
        star: true,
        down: false,
        ddown: false,
    };
    pub const DOWN: D4Element = D4Element {
        star: false,
        down: true,
        ddown: false,
    };
    pub const DDOWN: D4Element = D4Element {
        star: false,
        down: false,
        ddown: true,
    };

    /// All 8 elements, identity first.
    pub fn all() -> [D4Element; 8] {
        let mut out = [D4Element::IDENTITY; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = D4Element {
                star: k & 4 != 0,
                down: k & 2 != 0,
                ddown: k & 1 != 0,
            };
        }
        out
    }

    /// Group product `self * rhs` (i.e. apply `self` first, then `rhs`).
    ///
    /// Moving the `star` of `rhs` to the left swaps the `down`/`ddown`
    /// exponents of `self`; the exponents then add mod 2.
    pub fn compose(self, rhs: D4Element) -> D4Element {
        let (a, b) = if rhs.star {
            (self.ddown, self.down)
        } else {
            (self.down, self.ddown)
        };
        D4Element {
            star: self.star ^ rhs.star,
            down: a ^ rhs.down,
            ddown: b ^ rhs.ddown,
        }
    }

    pub fn inverse(self) -> D4Element {
        if self.star {
            D4Element {
                star: true,
                down: self.ddown,
                ddown: self.down,
            }
        } else {
            self
        }
    }

    /// The canonical generator word, applied left to right.
    pub fn generators(self) -> impl Iterator<Item = D4Element> {
        [
            self.star.then_some(D4Element::STAR),
            self.down.then_some(D4Element::DOWN),
            self.ddown.then_some(D4Element::DDOWN),
        ]
        .into_iter()
        .flatten()
    }

    pub fn is_identity(self) -> bool {
        self == D4Element::IDENTITY
    }
}

/// Failure to parse a generator word.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown generator {token:?}; expected `star`, `down`, `ddown`, or `id`")]
pub struct ParseD4Error {
    pub token: String,
}

impl FromStr for D4Element {
    type Err = ParseD4Error;

    /// Parses a whitespace-separated generator word, e.g. `"star down"`.
    /// The empty word and `"id"` denote the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut g = D4Element::IDENTITY;
        for token in s.split_whitespace() {
            let generator = match token {
                "star" | "*" => D4Element::STAR,
                "down" => D4Element::DOWN,
                "ddown" => D4Element::DDOWN,
                "id" | "1" => D4Element::IDENTITY,
                other => {
                    return Err(ParseD4Error {
                        token: other.to_owned(),
                    })
                }
            };
            g = g.compose(generator);
        }
        Ok(g)
    }
}

impl fmt::Display for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut tokens = Vec::new();
        if self.star {
            tokens.push("star");
        }
        if self.down {
            tokens.push("down");
        }
        if self.ddown {
            tokens.push("ddown");
        }
        write!(f, "{}", tokens.join(" "))
    }
}

impl fmt::Debug for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
