use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Coefficient letters of the skein relations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Letter {
    pub const ALL: [Letter; 6] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::E, Letter::F];

    pub fn index(self) -> u16 {
        self as u16
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c.to_ascii_uppercase() {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            'D' => Some(Letter::D),
            'E' => Some(Letter::E),
            'F' => Some(Letter::F),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }
}

const GENERIC_BASE: u16 = 0x7000;
const MAX_SUBSCRIPT: u16 = 64;

/// A ring variable, packed so that the natural `u16` order is the fixed
/// variable enumeration: `A` before `B` ... before `F`, subscripts row-major,
/// then generic variables `x[i]`, with `delta` last.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u16);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VarKind {
    Letter { letter: Letter, x: u16, y: u16 },
    Generic(u16),
    Delta,
}

impl Var {
    pub const DELTA: Var = Var(u16::MAX);

    /// `letter_{x,y}` with 1-based subscripts (at most 64).
    pub fn letter(letter: Letter, x: usize, y: usize) -> Var {
        assert!(
            (1..=MAX_SUBSCRIPT as usize).contains(&x) && (1..=MAX_SUBSCRIPT as usize).contains(&y),
            "subscript out of range"
        );
        Var((letter.index() << 12) | (((x - 1) as u16) << 6) | ((y - 1) as u16))
    }

    pub fn generic(i: usize) -> Var {
        assert!(i < 0x0fff, "generic variable index too large");
        Var(GENERIC_BASE + i as u16)
    }

    pub fn raw(self) -> u16 {
        self.0
    }

    pub fn kind(self) -> VarKind {
        if self == Var::DELTA {
            VarKind::Delta
        } else if self.0 >= GENERIC_BASE {
            VarKind::Generic(self.0 - GENERIC_BASE)
        } else {
            let letter = Letter::ALL[(self.0 >> 12) as usize];
            VarKind::Letter { letter, x: ((self.0 >> 6) & 0x3f) + 1, y: (self.0 & 0x3f) + 1 }
        }
    }

    pub fn is_delta(self) -> bool {
        self == Var::DELTA
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            VarKind::Letter { letter, x, y } => write!(f, "{}[{},{}]", letter.as_char(), x, y),
            VarKind::Generic(i) => write!(f, "x[{}]", i),
            VarKind::Delta => write!(f, "delta"),
        }
    }
}

impl FromStr for Var {
    type Err = String;

    fn from_str(s: &str) -> Result<Var, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("delta") || t == "δ" {
            return Ok(Var::DELTA);
        }
        let open = t.find('[').ok_or_else(|| format!("bad variable `{t}`"))?;
        if !t.ends_with(']') {
            return Err(format!("bad variable `{t}`"));
        }
        let head = &t[..open];
        let inner = &t[open + 1..t.len() - 1];
        let nums: Result<Vec<usize>, _> = inner.split(',').map(|p| p.trim().parse::<usize>()).collect();
        let nums = nums.map_err(|_| format!("bad subscript in `{t}`"))?;
        let mut chars = head.chars();
        match (chars.next(), chars.next(), nums.as_slice()) {
            (Some('x'), None, [i]) if *i < 0x0fff => Ok(Var::generic(*i)),
            (Some(c), None, [x, y]) => {
                let letter = Letter::from_char(c).ok_or_else(|| format!("unknown letter in `{t}`"))?;
                let range = 1..=MAX_SUBSCRIPT as usize;
                if !range.contains(x) || !range.contains(y) {
                    return Err(format!("subscript out of range in `{t}`"));
                }
                Ok(Var::letter(letter, *x, *y))
            }
            _ => Err(format!("bad variable `{t}`")),
        }
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Var, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let a12 = Var::letter(Letter::A, 1, 2);
        let a21 = Var::letter(Letter::A, 2, 1);
        let b11 = Var::letter(Letter::B, 1, 1);
        let f33 = Var::letter(Letter::F, 3, 3);
        assert!(a12 < a21);
        assert!(a21 < b11);
        assert!(f33 < Var::generic(0));
        assert!(Var::generic(5) < Var::DELTA);
        assert_eq!(a21.kind(), VarKind::Letter { letter: Letter::A, x: 2, y: 1 });
        assert_eq!(a21.to_string(), "A[2,1]");
        for v in [a12, f33, Var::generic(3), Var::DELTA] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert!("G[1,1]".parse::<Var>().is_err());
        assert!("A[0,1]".parse::<Var>().is_err());
    }
}
