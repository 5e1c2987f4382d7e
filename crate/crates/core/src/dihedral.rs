//! Normal-form arithmetic in the dihedral group
//! `D_2n = <a, b | a^n = b^2 = 1, ab = ba^-1>`.
//!
//! Every element is written uniquely as `a^i` or `a^i b` with `0 <= i < n`.
//! The identity is `a^0`, printed as `e`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Half the order of the dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupCtx {
    n: u32,
}

impl GroupCtx {
    /// Smallest supported `n`.
    pub const MIN_N: u32 = 2;

    pub fn new(n: u32) -> Result<Self> {
        if n < Self::MIN_N {
            return Err(Error::InvalidGroupOrder(n));
        }
        Ok(GroupCtx { n })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, `2n`.
    #[inline]
    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    #[inline]
    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// `a^k` with `k` reduced modulo `n`; negative exponents allowed.
    pub fn rotation(&self, k: i64) -> GroupElement {
        GroupElement {
            rotation: k.rem_euclid(self.n as i64) as u32,
            reflected: false,
        }
    }

    /// `a^k b` with `k` reduced modulo `n`.
    pub fn reflection(&self, k: i64) -> GroupElement {
        GroupElement {
            rotation: k.rem_euclid(self.n as i64) as u32,
            reflected: true,
        }
    }

    /// All `2n` elements: `e, a, ..., a^(n-1), b, ab, ..., a^(n-1) b`.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// Position of `x` in [`GroupCtx::elements`].
    #[inline]
    pub fn index_of(&self, x: GroupElement) -> usize {
        x.rotation as usize + if x.reflected { self.n as usize } else { 0 }
    }

    /// Inverse of [`GroupCtx::index_of`]. Panics if `index >= 2n`.
    #[inline]
    pub fn element_at(&self, index: usize) -> GroupElement {
        assert!(index < self.order(), "element index {index} out of range");
        let n = self.n as usize;
        GroupElement {
            rotation: (index % n) as u32,
            reflected: index >= n,
        }
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        x.rotation < self.n
    }

    /// Group product. Uses `b a^i = a^-i b`.
    pub fn multiply(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        let n = self.n as u64;
        let j = if x.reflected {
            (n - y.rotation as u64) % n
        } else {
            y.rotation as u64
        };
        GroupElement {
            rotation: ((x.rotation as u64 + j) % n) as u32,
            reflected: x.reflected ^ y.reflected,
        }
    }

    pub fn inverse(&self, x: GroupElement) -> GroupElement {
        if x.reflected {
            x
        } else {
            GroupElement {
                rotation: (self.n - x.rotation) % self.n,
                reflected: false,
            }
        }
    }

    /// Parses one element; see [`parse_element`].
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        parse_element(text, *self)
    }

    /// Parses a comma-separated list of distinct elements.
    pub fn parse_subset(&self, text: &str) -> Result<Vec<GroupElement>> {
        parse_subset(text, *self)
    }
}

/// An element `a^rotation` or `a^rotation b` of `D_2n`.
///
/// Values only make sense relative to the [`GroupCtx`] they were built for.
/// Ordering follows the global element order: rotations first, then
/// reflections, each by exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    rotation: u32,
    reflected: bool,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        rotation: 0,
        reflected: false,
    };

    #[inline]
    pub fn rotation(&self) -> u32 {
        self.rotation
    }

    #[inline]
    pub fn is_reflection(&self) -> bool {
        self.reflected
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.reflected, self.rotation).cmp(&(other.reflected, other.rotation))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rotation, self.reflected) {
            (0, false) => f.write_str("e"),
            (0, true) => f.write_str("b"),
            (1, false) => f.write_str("a"),
            (1, true) => f.write_str("a b"),
            (k, false) => write!(f, "a^{k}"),
            (k, true) => write!(f, "a^{k} b"),
        }
    }
}

/// Canonical text of an element: `e`, `a`, `a^K`, `b`, `a b`, `a^K b`.
pub fn format_element(x: GroupElement) -> String {
    x.to_string()
}

/// Formats a list as `x, y, z`.
pub fn format_subset(elements: &[GroupElement]) -> String {
    elements
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    A,
    B,
    E,
    Caret,
    Star,
    /// Exponent already reduced modulo n; `positive` is false for `0`, `00`, ...
    Number { reduced: u32, positive: bool },
}

fn tokenize(text: &str, n: u32) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            'a' => Token::A,
            'b' => Token::B,
            'e' => Token::E,
            '^' => Token::Caret,
            '*' => Token::Star,
            '0'..='9' => {
                let mut reduced = c.to_digit(10).unwrap() as u64 % n as u64;
                let mut positive = c != '0';
                while let Some(&(_, d)) = chars.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    reduced = (reduced * 10 + digit as u64) % n as u64;
                    positive |= digit != 0;
                    chars.next();
                }
                Token::Number {
                    reduced: reduced as u32,
                    positive,
                }
            }
            other => {
                return Err(Error::parse(
                    text,
                    format!("unexpected character {other:?} at byte {pos}"),
                ))
            }
        };
        tokens.push(tok);
    }
    Ok(tokens)
}

/// Parses the element grammar
///
/// ```text
/// e | b | a [^K] [ [*] b ]
/// ```
///
/// where `K` is a positive decimal integer. Exponents `>= n` are reduced.
/// Whitespace between tokens is ignored.
pub fn parse_element(text: &str, ctx: GroupCtx) -> Result<GroupElement> {
    let tokens = tokenize(text, ctx.n)?;
    let err = |reason: &str| Error::parse(text, reason);
    match tokens.as_slice() {
        [] => Err(err("empty element")),
        [Token::E] => Ok(GroupElement::IDENTITY),
        [Token::B] => Ok(ctx.reflection(0)),
        [Token::A, rest @ ..] => {
            let (rotation, rest) = match rest {
                [Token::Caret, Token::Number { reduced, positive }, tail @ ..] => {
                    if !positive {
                        return Err(err("exponent must be a positive integer"));
                    }
                    (*reduced, tail)
                }
                [Token::Caret, ..] => return Err(err("expected exponent after '^'")),
                tail => (1 % ctx.n, tail),
            };
            let reflected = match rest {
                [] => false,
                [Token::B] | [Token::Star, Token::B] => true,
                _ => return Err(err("trailing input after rotation")),
            };
            Ok(GroupElement {
                rotation,
                reflected,
            })
        }
        _ => Err(err("element must start with 'a', 'b' or 'e'")),
    }
}

/// Parses `x, y, ...` into distinct elements, preserving input order.
pub fn parse_subset(text: &str, ctx: GroupCtx) -> Result<Vec<GroupElement>> {
    if text.trim().is_empty() {
        return Err(Error::EmptySet);
    }
    let mut out: Vec<GroupElement> = Vec::new();
    for part in text.split(',') {
        let x = parse_element(part, ctx)?;
        if out.contains(&x) {
            return Err(Error::DuplicateElement(x.to_string()));
        }
        out.push(x);
    }
    Ok(out)
}
