//! Conversion between prefix codes and explicit trees, plus text renderings.
//!
//! Every traversal here is iterative so that degenerate trees (long unary
//! chains) of millions of nodes never touch the call-stack depth limit.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde_json::Value;

use crate::degree::DegreeSequence;
use crate::error::{Error, Result};
use crate::random::RandomSource;

/// Ordered rooted tree. A node's outdegree is its number of children.
#[derive(Default)]
pub struct TreeNode {
    children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn leaf() -> Self {
        TreeNode::default()
    }

    pub fn new(children: Vec<TreeNode>) -> Self {
        TreeNode { children }
    }

    pub fn outdegree(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self) -> &[TreeNode] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            count += 1;
            stack.extend(n.children.iter());
        }
        count
    }

    /// Preorder traversal.
    pub fn preorder(&self) -> impl Iterator<Item = &TreeNode> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let n = stack.pop()?;
            stack.extend(n.children.iter().rev());
            Some(n)
        })
    }
}

impl Drop for TreeNode {
    fn drop(&mut self) {
        let mut pending = std::mem::take(&mut self.children);
        while let Some(mut n) = pending.pop() {
            pending.append(&mut n.children);
        }
    }
}

// A prefix code determines its tree, so equality and cloning go through it.
impl PartialEq for TreeNode {
    fn eq(&self, other: &Self) -> bool {
        self.preorder()
            .map(TreeNode::outdegree)
            .eq(other.preorder().map(TreeNode::outdegree))
    }
}

impl Eq for TreeNode {}

impl Clone for TreeNode {
    fn clone(&self) -> Self {
        decode_prefix(&encode_prefix(self)).expect("preorder code of a tree is well-formed")
    }
}

impl fmt::Debug for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeNode{}", to_sexpr(self))
    }
}

struct Frame {
    degree: usize,
    children: Vec<TreeNode>,
}

/// Decodes a prefix code into the tree it lists in preorder.
///
/// Fails with [`Error::Truncated`] when operands run out and with
/// [`Error::TrailingSymbols`] when a complete tree ends before the input does.
pub fn decode_prefix(s: &[usize]) -> Result<TreeNode> {
    let mut stack: Vec<Frame> = Vec::new();
    let mut root = None;
    for (i, &d) in s.iter().enumerate() {
        if root.is_some() {
            return Err(Error::TrailingSymbols {
                consumed: i,
                len: s.len(),
            });
        }
        let room = d.min(s.len() - i - 1);
        stack.push(Frame {
            degree: d,
            children: Vec::with_capacity(room),
        });
        while stack
            .last()
            .is_some_and(|top| top.children.len() == top.degree)
        {
            let done = stack.pop().expect("non-empty");
            let node = TreeNode::new(done.children);
            match stack.last_mut() {
                Some(parent) => parent.children.push(node),
                None => {
                    root = Some(node);
                    break;
                }
            }
        }
    }
    match root {
        Some(t) => Ok(t),
        None if stack.is_empty() => Err(Error::Truncated { missing: 1 }),
        None => Err(Error::Truncated {
            missing: stack.iter().map(|f| f.degree - f.children.len()).sum(),
        }),
    }
}

/// Preorder listing of outdegrees.
pub fn encode_prefix(t: &TreeNode) -> DegreeSequence {
    DegreeSequence::new(t.preorder().map(TreeNode::outdegree).collect())
}

enum Piece<'a> {
    Node(&'a TreeNode),
    Text(&'static str),
}

/// `0` for a leaf, `(d c1 … cd)` for an inner node.
pub fn to_sexpr(t: &TreeNode) -> String {
    let mut out = String::new();
    let mut stack = vec![Piece::Node(t)];
    while let Some(p) = stack.pop() {
        match p {
            Piece::Text(s) => out.push_str(s),
            Piece::Node(n) if n.is_leaf() => out.push('0'),
            Piece::Node(n) => {
                write!(out, "({}", n.outdegree()).unwrap();
                stack.push(Piece::Text(")"));
                for c in n.children.iter().rev() {
                    stack.push(Piece::Node(c));
                    stack.push(Piece::Text(" "));
                }
            }
        }
    }
    out
}

/// Graphviz digraph. Nodes are numbered in preorder from 0 and labelled with
/// their outdegree; edges follow the same order.
pub fn to_dot(t: &TreeNode) -> String {
    let mut nodes = String::new();
    let mut edges = String::new();
    let mut next_id = 0usize;
    let mut stack: Vec<(&TreeNode, Option<usize>)> = vec![(t, None)];
    while let Some((n, parent)) = stack.pop() {
        let id = next_id;
        next_id += 1;
        writeln!(nodes, "  {id} [label=\"{}\"];", n.outdegree()).unwrap();
        if let Some(p) = parent {
            writeln!(edges, "  {p} -> {id};").unwrap();
        }
        stack.extend(n.children.iter().rev().map(|c| (c, Some(id))));
    }
    format!("digraph tree {{\n{nodes}{edges}}}\n")
}

/// Compact JSON: `{"degree":d,"children":[...]}` with no whitespace.
pub fn to_json(t: &TreeNode) -> String {
    let mut out = String::new();
    let mut stack = vec![Piece::Node(t)];
    while let Some(p) = stack.pop() {
        match p {
            Piece::Text(s) => out.push_str(s),
            Piece::Node(n) => {
                write!(out, "{{\"degree\":{},\"children\":[", n.outdegree()).unwrap();
                stack.push(Piece::Text("]}"));
                for (i, c) in n.children.iter().enumerate().rev() {
                    stack.push(Piece::Node(c));
                    if i > 0 {
                        stack.push(Piece::Text(","));
                    }
                }
            }
        }
    }
    out
}

/// Parses the output of [`to_json`]. Nesting is limited by the JSON parser's
/// recursion limit (128 levels).
pub fn from_json(text: &str) -> Result<TreeNode> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    tree_from_value(&value)
}

fn tree_from_value(v: &Value) -> Result<TreeNode> {
    let bad = |msg: &str| Error::Json(msg.to_string());
    let obj = v
        .as_object()
        .ok_or_else(|| bad("tree node must be an object"))?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing or invalid \"degree\""))?;
    let children = obj
        .get("children")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing or invalid \"children\""))?;
    if children.len() as u64 != degree {
        return Err(bad("\"degree\" does not match number of children"));
    }
    let children = children
        .iter()
        .map(tree_from_value)
        .collect::<Result<_>>()?;
    Ok(TreeNode::new(children))
}

/// Display symbols per arity, for rendering trees as expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorAlphabet {
    symbols: BTreeMap<usize, Vec<String>>,
}

impl OperatorAlphabet {
    pub fn new(symbols: BTreeMap<usize, Vec<String>>) -> Result<Self> {
        if let Some((&arity, _)) = symbols.iter().find(|(_, v)| v.is_empty()) {
            return Err(Error::EmptySymbols(arity));
        }
        Ok(OperatorAlphabet { symbols })
    }

    /// Reads a JSON object mapping arity (as a string key) to symbol lists,
    /// e.g. `{"0": ["x", "1"], "2": ["+", "*"]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, Vec<String>> =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut symbols = BTreeMap::new();
        for (key, syms) in raw {
            let arity: usize = key.trim().parse().map_err(|_| {
                Error::Json(format!("arity key {key:?} is not a non-negative integer"))
            })?;
            symbols.insert(arity, syms);
        }
        Self::new(symbols)
    }

    pub fn symbols(&self, arity: usize) -> Option<&[String]> {
        self.symbols.get(&arity).map(Vec::as_slice)
    }

    /// Alphabet for arithmetic fuzzing: variables and constants, unary minus,
    /// and the four binary operators.
    pub fn arithmetic() -> Self {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let symbols = BTreeMap::from([
            (0, s(&["x", "y", "1", "2"])),
            (1, s(&["-"])),
            (2, s(&["+", "-", "*", "/"])),
        ]);
        OperatorAlphabet { symbols }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpressionStyle {
    /// `op arg1 … argk`, space separated.
    Prefix,
    /// Fully parenthesized: `(a op b)` for binary nodes, `op(a, …)` for other
    /// operators, bare symbols for leaves.
    Infix,
}

/// Renders `t` with one uniformly chosen symbol per node, drawn in preorder.
pub fn render_expression<R: RandomSource + ?Sized>(
    t: &TreeNode,
    alphabet: &OperatorAlphabet,
    rng: &mut R,
    style: ExpressionStyle,
) -> Result<String> {
    for n in t.preorder() {
        if alphabet.symbols(n.outdegree()).is_none() {
            return Err(Error::MissingArity(n.outdegree()));
        }
    }
    enum Item<'a> {
        Node(&'a TreeNode),
        Text(&'static str),
        Sym(&'a str),
    }
    let mut out = String::new();
    let mut stack = vec![Item::Node(t)];
    while let Some(item) = stack.pop() {
        let n = match item {
            Item::Text(s) => {
                out.push_str(s);
                continue;
            }
            Item::Sym(s) => {
                out.push_str(s);
                continue;
            }
            Item::Node(n) => n,
        };
        let choices = alphabet.symbols(n.outdegree()).expect("checked above");
        let sym = choices[rng.next_below(choices.len() as u64) as usize].as_str();
        match (style, n.outdegree()) {
            (_, 0) => out.push_str(sym),
            (ExpressionStyle::Prefix, _) => {
                out.push_str(sym);
                for c in n.children.iter().rev() {
                    stack.push(Item::Node(c));
                    stack.push(Item::Text(" "));
                }
            }
            (ExpressionStyle::Infix, 2) => {
                out.push('(');
                stack.push(Item::Text(")"));
                stack.push(Item::Node(&n.children[1]));
                stack.push(Item::Text(" "));
                stack.push(Item::Sym(sym));
                stack.push(Item::Text(" "));
                stack.push(Item::Node(&n.children[0]));
            }
            (ExpressionStyle::Infix, _) => {
                out.push_str(sym);
                out.push('(');
                stack.push(Item::Text(")"));
                for (i, c) in n.children.iter().enumerate().rev() {
                    stack.push(Item::Node(c));
                    if i > 0 {
                        stack.push(Item::Text(", "));
                    }
                }
            }
        }
    }
    Ok(out)
}
