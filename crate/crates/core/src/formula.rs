//! Quantifier-free definitions over a trace structure: boolean combinations of
//! column equalities and signed sign-pattern atoms, with one free slot `y`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::trace::{IndexedSequence, SignPattern, TraceStructure};
use crate::{Error, Result};

/// Position in an atom: a parameter or the free variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Param(usize),
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    /// Conjunction; empty means true.
    And(Vec<Node>),
    /// Disjunction; empty means false.
    Or(Vec<Node>),
    Not(Box<Node>),
    /// `y` has the same column as the parameter.
    Eq(usize),
    /// Some row matches `pattern` on the slot columns (negated unless `positive`).
    Delta { pattern: SignPattern, positive: bool, slots: Vec<Slot> },
}

impl Node {
    pub fn truth() -> Node {
        Node::And(Vec::new())
    }

    pub fn falsity() -> Node {
        Node::Or(Vec::new())
    }

    /// Negation, pushed into atoms and constants where that is free.
    pub fn negate(self) -> Node {
        match self {
            Node::Delta { pattern, positive, slots } => Node::Delta { pattern, positive: !positive, slots },
            Node::Not(inner) => *inner,
            Node::And(v) if v.is_empty() => Node::falsity(),
            Node::Or(v) if v.is_empty() => Node::truth(),
            other => Node::Not(Box::new(other)),
        }
    }

    /// `y` equals one of the listed parameters.
    pub fn any_eq(params: impl IntoIterator<Item = usize>) -> Node {
        Node::Or(params.into_iter().map(Node::Eq).collect())
    }

    /// `y` equals none of the listed parameters.
    pub fn none_eq(params: impl IntoIterator<Item = usize>) -> Node {
        Node::And(params.into_iter().map(|p| Node::Not(Box::new(Node::Eq(p)))).collect())
    }

    fn visit_params(&self, f: &mut dyn FnMut(usize)) {
        match self {
            Node::And(v) | Node::Or(v) => v.iter().for_each(|c| c.visit_params(f)),
            Node::Not(c) => c.visit_params(f),
            Node::Eq(p) => f(*p),
            Node::Delta { slots, .. } => {
                for s in slots {
                    if let Slot::Param(p) = s {
                        f(*p);
                    }
                }
            }
        }
    }

    fn map_params(&self, f: &dyn Fn(usize) -> usize) -> Node {
        match self {
            Node::And(v) => Node::And(v.iter().map(|c| c.map_params(f)).collect()),
            Node::Or(v) => Node::Or(v.iter().map(|c| c.map_params(f)).collect()),
            Node::Not(c) => Node::Not(Box::new(c.map_params(f))),
            Node::Eq(p) => Node::Eq(f(*p)),
            Node::Delta { pattern, positive, slots } => Node::Delta {
                pattern: *pattern,
                positive: *positive,
                slots: slots
                    .iter()
                    .map(|s| match s {
                        Slot::Param(p) => Slot::Param(f(*p)),
                        Slot::Free => Slot::Free,
                    })
                    .collect(),
            },
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Node::And(v) | Node::Or(v) => 1 + v.iter().map(Node::size).sum::<usize>(),
            Node::Not(c) => 1 + c.size(),
            _ => 1,
        }
    }

    /// Truth at a free column, with parameters resolved by `col`.
    pub fn holds(&self, t: &TraceStructure, col: &dyn Fn(usize) -> usize, y: usize) -> bool {
        match self {
            Node::And(v) => v.iter().all(|c| c.holds(t, col, y)),
            Node::Or(v) => v.iter().any(|c| c.holds(t, col, y)),
            Node::Not(c) => !c.holds(t, col, y),
            Node::Eq(p) => col(*p) == y,
            Node::Delta { pattern, positive, slots } => {
                let cols: Vec<usize> = slots
                    .iter()
                    .map(|s| match s {
                        Slot::Param(p) => col(*p),
                        Slot::Free => y,
                    })
                    .collect();
                t.realizes(&cols, *pattern) == *positive
            }
        }
    }

    /// The shape with parameters erased; children of `and`/`or` are sorted
    /// and deduplicated so that equivalent layouts coincide.
    pub fn template(&self) -> Node {
        match self {
            Node::And(v) => normalized(v, true),
            Node::Or(v) => normalized(v, false),
            Node::Not(c) => c.template().negate(),
            Node::Eq(_) => Node::Eq(0),
            Node::Delta { pattern, positive, slots } => Node::Delta {
                pattern: *pattern,
                positive: *positive,
                slots: slots
                    .iter()
                    .map(|s| match s {
                        Slot::Param(_) => Slot::Param(0),
                        Slot::Free => Slot::Free,
                    })
                    .collect(),
            },
        }
    }
}

// Flattens nested nodes of the same kind, sorts, dedups, unwraps singletons.
fn normalized(v: &[Node], conj: bool) -> Node {
    let mut out: Vec<Node> = Vec::new();
    for c in v {
        match (c.template(), conj) {
            (Node::And(inner), true) | (Node::Or(inner), false) => out.extend(inner),
            (other, _) => out.push(other),
        }
    }
    out.sort();
    out.dedup();
    match (out.len(), conj) {
        (1, _) => out.pop().expect("one child"),
        (_, true) => Node::And(out),
        (_, false) => Node::Or(out),
    }
}

/// A formula together with the elements its parameters stand for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefFormula {
    pub params: Vec<usize>,
    pub root: Node,
}

impl DefFormula {
    /// From a tree whose parameters are poset elements: parameters are
    /// renumbered in order of first occurrence.
    pub fn from_elements(root: &Node) -> Self {
        let mut params: Vec<usize> = Vec::new();
        root.visit_params(&mut |e| {
            if !params.contains(&e) {
                params.push(e);
            }
        });
        let index: BTreeMap<usize, usize> = params.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        DefFormula { root: root.map_params(&|e| index[&e]), params }
    }

    /// The tree with parameters replaced by the elements they stand for.
    pub fn to_elements(&self) -> Node {
        self.root.map_params(&|p| self.params[p])
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    /// Truth at element `j`: `y` takes the column of `j`.
    pub fn evaluate(&self, t: &TraceStructure, seq: &IndexedSequence, j: usize) -> bool {
        self.root.holds(t, &|p| seq.column(self.params[p]), seq.column(j))
    }

    pub fn template(&self) -> String {
        to_sexpr(&self.root.template())
    }

    pub fn to_sexpr(&self) -> String {
        to_sexpr(&self.root)
    }
}

pub fn to_sexpr(n: &Node) -> String {
    let mut s = String::new();
    write_node(&mut s, n).expect("writing to a string");
    s
}

fn write_node(out: &mut String, n: &Node) -> fmt::Result {
    match n {
        Node::And(v) | Node::Or(v) => {
            out.push_str(if matches!(n, Node::And(_)) { "(and" } else { "(or" });
            for c in v {
                out.push(' ');
                write_node(out, c)?;
            }
            out.push(')');
        }
        Node::Not(c) => {
            out.push_str("(not ");
            write_node(out, c)?;
            out.push(')');
        }
        Node::Eq(p) => write!(out, "(= p{p})")?,
        Node::Delta { pattern, positive, slots } => {
            write!(out, "(delta s={pattern} sign={} slots=[", if *positive { '+' } else { '-' })?;
            for (k, s) in slots.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                match s {
                    Slot::Param(p) => write!(out, "p{p}")?,
                    Slot::Free => out.push('*'),
                }
            }
            out.push_str("])");
        }
    }
    Ok(())
}

/// Parses the text form written by [`to_sexpr`].
pub fn parse_sexpr(text: &str) -> Result<Node> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let node = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input after token {pos}")));
    }
    Ok(node)
}

fn parse_param(tok: &str) -> Result<usize> {
    tok.strip_prefix('p')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected parameter, found {tok:?}")))
}

fn parse_node(tokens: &[&str], pos: &mut usize) -> Result<Node> {
    let mut next = || -> Result<&str> {
        let t = tokens.get(*pos).copied().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        *pos += 1;
        Ok(t)
    };
    if next()? != "(" {
        return Err(Error::Parse(format!("expected '(' at token {}", *pos - 1)));
    }
    let head = next()?;
    let node = match head {
        "and" | "or" => {
            let mut children = Vec::new();
            while tokens.get(*pos) == Some(&"(") {
                children.push(parse_node(tokens, pos)?);
            }
            if head == "and" { Node::And(children) } else { Node::Or(children) }
        }
        "not" => Node::Not(Box::new(parse_node(tokens, pos)?)),
        "=" => {
            let tok = tokens.get(*pos).copied().unwrap_or("");
            *pos += 1;
            Node::Eq(parse_param(tok)?)
        }
        "delta" => {
            let mut field = |name: &str| -> Result<&str> {
                let tok = tokens.get(*pos).copied().unwrap_or("");
                *pos += 1;
                tok.strip_prefix(name).ok_or_else(|| Error::Parse(format!("expected {name}, found {tok:?}")))
            };
            let pattern = SignPattern::parse(field("s=")?)?;
            let positive = match field("sign=")? {
                "+" => true,
                "-" => false,
                other => return Err(Error::Parse(format!("bad sign {other:?}"))),
            };
            let list = field("slots=")?
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| Error::Parse("slots must be bracketed".into()))?;
            let slots = list
                .split(',')
                .map(|s| if s == "*" { Ok(Slot::Free) } else { parse_param(s).map(Slot::Param) })
                .collect::<Result<Vec<Slot>>>()?;
            if slots.len() != pattern.arity as usize {
                return Err(Error::Parse("slot count differs from pattern length".into()));
            }
            Node::Delta { pattern, positive, slots }
        }
        other => return Err(Error::Parse(format!("unknown head {other:?}"))),
    };
    if tokens.get(*pos) != Some(&")") {
        return Err(Error::Parse(format!("expected ')' at token {}", *pos)));
    }
    *pos += 1;
    Ok(node)
}
