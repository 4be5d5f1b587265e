//! Structured vertex labels.
//!
//! Labels are compared structurally and carry a total order, so graphs built
//! from shift-graph tuples or line-graph edge pairs can be intersected and
//! united by label identity.
//!
//! Text syntax (used by the edge-list format and JSON output):
//!
//! ```text
//! 42            integer atom
//! "abc"         string atom (JSON string escaping)
//! (1,2,3)       tuple
//! {(1,2),(2,3)} edge pair, endpoints stored in sorted order
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Int(i64),
    Str(String),
    Tuple(Vec<VertexLabel>),
    /// Unordered pair; the constructor keeps `.0 <= .1`.
    Edge(Box<VertexLabel>, Box<VertexLabel>),
}

impl VertexLabel {
    pub fn int(v: i64) -> Self {
        VertexLabel::Int(v)
    }

    pub fn str(s: impl Into<String>) -> Self {
        VertexLabel::Str(s.into())
    }

    pub fn tuple<I, L>(items: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: Into<VertexLabel>,
    {
        VertexLabel::Tuple(items.into_iter().map(Into::into).collect())
    }

    pub fn edge(a: VertexLabel, b: VertexLabel) -> Self {
        if a <= b {
            VertexLabel::Edge(Box::new(a), Box::new(b))
        } else {
            VertexLabel::Edge(Box::new(b), Box::new(a))
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            VertexLabel::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[VertexLabel]> {
        match self {
            VertexLabel::Tuple(items) => Some(items),
            _ => None,
        }
    }

    /// Integer components of a tuple of integer atoms.
    pub fn int_tuple(&self) -> Option<Vec<i64>> {
        self.as_tuple()?.iter().map(VertexLabel::as_int).collect()
    }

    pub fn edge_endpoints(&self) -> Option<(&VertexLabel, &VertexLabel)> {
        match self {
            VertexLabel::Edge(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, VertexLabel::Int(_) | VertexLabel::Str(_))
    }
}

impl From<i64> for VertexLabel {
    fn from(v: i64) -> Self {
        VertexLabel::Int(v)
    }
}

impl From<i32> for VertexLabel {
    fn from(v: i32) -> Self {
        VertexLabel::Int(v as i64)
    }
}

impl From<usize> for VertexLabel {
    fn from(v: usize) -> Self {
        VertexLabel::Int(v as i64)
    }
}

impl From<&str> for VertexLabel {
    fn from(s: &str) -> Self {
        VertexLabel::Str(s.to_string())
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Int(v) => write!(f, "{v}"),
            VertexLabel::Str(s) => {
                let quoted = serde_json::to_string(s).map_err(|_| fmt::Error)?;
                f.write_str(&quoted)
            }
            VertexLabel::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
            VertexLabel::Edge(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid vertex label at column {column}: {message}")]
pub struct LabelParseError {
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, LabelParseError> {
        Err(LabelParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), LabelParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn label(&mut self) -> Result<VertexLabel, LabelParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    return Ok(VertexLabel::Tuple(items));
                }
                loop {
                    items.push(self.label()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(VertexLabel::Tuple(items));
                        }
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
            }
            Some(b'{') => {
                self.pos += 1;
                let a = self.label()?;
                self.expect(b',')?;
                let b = self.label()?;
                self.expect(b'}')?;
                Ok(VertexLabel::edge(a, b))
            }
            Some(b'"') => {
                let start = self.pos;
                self.pos += 1;
                loop {
                    match self.peek() {
                        None => return self.err("unterminated string"),
                        Some(b'\\') => self.pos += 2,
                        Some(b'"') => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => self.pos += 1,
                    }
                }
                match serde_json::from_str::<String>(&self.src[start..self.pos]) {
                    Ok(s) => Ok(VertexLabel::Str(s)),
                    Err(e) => self.err(e.to_string()),
                }
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let start = self.pos;
                self.pos += 1;
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    self.pos += 1;
                }
                match self.src[start..self.pos].parse::<i64>() {
                    Ok(v) => Ok(VertexLabel::Int(v)),
                    Err(e) => self.err(e.to_string()),
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let label = p.label()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing characters");
        }
        Ok(label)
    }
}

impl VertexLabel {
    /// Parses a whitespace-separated sequence of labels.
    pub fn parse_list(s: &str) -> Result<Vec<VertexLabel>, LabelParseError> {
        let mut p = Parser { src: s, pos: 0 };
        let mut out = Vec::new();
        loop {
            p.skip_ws();
            if p.pos == s.len() {
                return Ok(out);
            }
            out.push(p.label()?);
            if !matches!(p.peek(), None | Some(b' ' | b'\t')) {
                return p.err("expected whitespace between labels");
            }
        }
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn label_lists() {
        let v = VertexLabel::parse_list(" 1 (2,3)  \"a b\" {4,5}").unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[2], VertexLabel::str("a b"));
        assert!(VertexLabel::parse_list("").unwrap().is_empty());
        assert!(VertexLabel::parse_list("(1,2)(3)").is_err());
    }

    #[test]
    fn edge_is_unordered() {
        let a = VertexLabel::edge(2.into(), 1.into());
        let b = VertexLabel::edge(1.into(), 2.into());
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{1,2}");
    }

    #[test]
    fn parse_nested() {
        let l: VertexLabel = "{(1,2), (2,3)}".parse().unwrap();
        assert_eq!(
            l,
            VertexLabel::edge(VertexLabel::tuple([1, 2]), VertexLabel::tuple([2, 3]))
        );
        assert!("(1,2".parse::<VertexLabel>().is_err());
        assert!("x".parse::<VertexLabel>().is_err());
    }

    fn arb_label() -> impl Strategy<Value = VertexLabel> {
        let leaf = prop_oneof![
            any::<i64>().prop_map(VertexLabel::Int),
            "[a-z\"\\\\ ]{0,6}".prop_map(VertexLabel::Str),
        ];
        leaf.prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(VertexLabel::Tuple),
                (inner.clone(), inner).prop_map(|(a, b)| VertexLabel::edge(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(l in arb_label()) {
            let text = l.to_string();
            prop_assert_eq!(text.parse::<VertexLabel>().unwrap(), l);
        }
    }
}
