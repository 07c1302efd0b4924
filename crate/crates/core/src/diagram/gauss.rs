//! Signed Gauss code text: components separated by commas or whitespace,
//! each a run of `O<k><s>` / `U<k><s>` tokens, `()` for a bare circle.

use super::{OrientedDiagram, Passage, Sign};
use crate::error::{Error, Result};

fn syntax(at: usize, msg: impl std::fmt::Display) -> Error {
    Error::Syntax(format!("{msg} at offset {at}"))
}

pub(super) fn parse(text: &str) -> Result<OrientedDiagram> {
    let mut comps = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut current: Option<Vec<Passage>> = None;
    while i < chars.len() {
        let (at, c) = chars[i];
        match c {
            c if c.is_whitespace() || c == ',' || c == ';' => {
                if let Some(comp) = current.take() {
                    comps.push(comp);
                }
                i += 1;
            }
            '(' => {
                if current.is_some() || chars.get(i + 1).map(|x| x.1) != Some(')') {
                    return Err(syntax(at, "expected `()`"));
                }
                comps.push(Vec::new());
                i += 2;
            }
            'o' | 'O' | 'u' | 'U' => {
                let over = c.eq_ignore_ascii_case(&'o');
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(syntax(at, "missing crossing id"));
                }
                let digits: String = chars[start..i].iter().map(|x| x.1).collect();
                let crossing: u32 = digits.parse().map_err(|_| syntax(at, "crossing id too large"))?;
                if crossing == 0 {
                    return Err(syntax(at, "crossing ids start at 1"));
                }
                let sign = match chars.get(i).map(|x| x.1) {
                    Some('+') => Sign::Positive,
                    Some('-') | Some('\u{2212}') => Sign::Negative,
                    _ => return Err(syntax(at, "missing sign")),
                };
                i += 1;
                current.get_or_insert_with(Vec::new).push(Passage { crossing, over, sign });
            }
            _ => return Err(syntax(at, format!("unexpected character `{c}`"))),
        }
    }
    if let Some(comp) = current.take() {
        comps.push(comp);
    }
    if comps.is_empty() {
        return Err(Error::Syntax("empty diagram code".into()));
    }
    OrientedDiagram::new(comps)
}

pub(super) fn serialize(d: &OrientedDiagram) -> String {
    d.components()
        .iter()
        .map(|comp| {
            if comp.is_empty() {
                return "()".to_string();
            }
            comp.iter()
                .map(|p| format!("{}{}{}", if p.over { 'O' } else { 'U' }, p.crossing, p.sign.as_char()))
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn errors() {
        assert!(matches!(parse("O1+U2+"), Err(Error::UnpairedCrossing(1))));
        assert!(matches!(parse("O1+U1-"), Err(Error::SignMismatch(1))));
        assert!(matches!(parse("O1+O1+"), Err(Error::UnpairedCrossing(1))));
        assert!(matches!(parse("X1+"), Err(Error::Syntax(_))));
        assert!(matches!(parse("O1"), Err(Error::Syntax(_))));
        assert!(matches!(parse(""), Err(Error::Syntax(_))));
        assert!(matches!(parse("(O1+U1+)"), Err(Error::Syntax(_))));
    }

    #[test]
    fn multi_component_and_case() {
        let d = parse("o1+u2-, U1+O2−  ()").unwrap();
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.to_string(), "O1+U2-, U1+O2-, ()");
    }

    fn arb_code() -> impl Strategy<Value = OrientedDiagram> {
        (0usize..6, 1usize..3, any::<u64>()).prop_map(|(n, comps, seed)| crate::diagram::moves::random_diagram(n, comps, seed))
    }

    proptest! {
        #[test]
        fn parse_serialize_roundtrip(d in arb_code()) {
            let c = d.canonicalize();
            let text = c.to_string();
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
