//! Ranked alphabets, interned trees, node addressing, and the two
//! substitution calculi everything else is built from.
//!
//! Trees are hash-consed through a global table: structurally equal trees are
//! always the same allocation, so equality is pointer comparison and the set
//! of distinct subtrees of a value is just the set of reachable nodes. The
//! table is append-only and synchronized; values are immutable.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::symbol::{Symbol, SymbolKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("path {path} leaves the tree")]
    PathOutOfRange { path: Path },
    #[error("symbol {symbol} is bound by a first-order substitution but occurs with rank {rank}")]
    NonNullarySymbol { symbol: Symbol, rank: usize },
    #[error("binding image for {symbol} (rank {rank}) mentions parameter y{param}")]
    ParamOutOfArity { symbol: Symbol, rank: usize, param: u32 },
    #[error("symbol {symbol} has rank {expected} but occurs with {got} children")]
    RankMismatch { symbol: Symbol, expected: usize, got: usize },
    #[error("unknown symbol {symbol}")]
    UnknownSymbol { symbol: Symbol },
    #[error("duplicate symbol {name} in alphabet")]
    DuplicateSymbol { name: String },
}

/// A node address: the 1-based child indices from the root. The empty path is
/// the root itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path(pub Vec<u32>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u32) -> Path {
        let mut steps = self.0.clone();
        steps.push(i);
        Path(steps)
    }

    pub fn parent(&self) -> Option<Path> {
        if self.0.is_empty() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// True if `self` is a (non-strict) prefix of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn is_strict_prefix_of(&self, other: &Path) -> bool {
        other.0.len() > self.0.len() && self.is_prefix_of(other)
    }

    pub fn join(&self, other: &Path) -> Path {
        let mut steps = self.0.clone();
        steps.extend_from_slice(&other.0);
        Path(steps)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let steps: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&steps.join("."))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug)]
pub struct TreeNode {
    label: Symbol,
    children: Vec<Tree>,
    size: u64,
    height: u32,
}

/// An immutable, interned ranked tree. `Clone` is an `Arc` bump; equality is
/// pointer equality.
#[derive(Clone)]
pub struct Tree {
    node: Arc<TreeNode>,
}

type InternKey = (Symbol, Vec<usize>);

fn tree_table() -> &'static Mutex<HashMap<InternKey, Tree>> {
    static TABLE: OnceLock<Mutex<HashMap<InternKey, Tree>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Tree {
    pub fn new(label: Symbol, children: Vec<Tree>) -> Tree {
        let key: InternKey = (
            label,
            children.iter().map(|c| Arc::as_ptr(&c.node) as usize).collect(),
        );
        let mut table = tree_table().lock().unwrap();
        if let Some(t) = table.get(&key) {
            return t.clone();
        }
        let size = 1 + children.iter().map(|c| c.size()).sum::<u64>();
        let height = 1 + children.iter().map(|c| c.height()).max().unwrap_or(0);
        let tree = Tree {
            node: Arc::new(TreeNode {
                label,
                children,
                size,
                height,
            }),
        };
        table.insert(key, tree.clone());
        tree
    }

    pub fn leaf(label: Symbol) -> Tree {
        Tree::new(label, Vec::new())
    }

    pub fn label(&self) -> Symbol {
        self.node.label
    }

    pub fn children(&self) -> &[Tree] {
        &self.node.children
    }

    pub fn arity(&self) -> usize {
        self.node.children.len()
    }

    /// Number of nodes.
    pub fn size(&self) -> u64 {
        self.node.size
    }

    /// Height with `height(leaf) = 1`.
    pub fn height(&self) -> u32 {
        self.node.height
    }

    fn ptr(&self) -> usize {
        Arc::as_ptr(&self.node) as usize
    }

    /// A stable identity for this interned value, usable as a memo key.
    pub fn id(&self) -> usize {
        self.ptr()
    }

    /// The label at `u` and the subtree rooted there.
    pub fn node_access(&self, u: &Path) -> Result<(Symbol, Tree), TreeError> {
        let mut cur = self.clone();
        for &step in &u.0 {
            let idx = step as usize;
            if step == 0 || idx > cur.arity() {
                return Err(TreeError::PathOutOfRange { path: u.clone() });
            }
            cur = cur.children()[idx - 1].clone();
        }
        Ok((cur.label(), cur))
    }

    pub fn subtree(&self, u: &Path) -> Result<Tree, TreeError> {
        self.node_access(u).map(|(_, t)| t)
    }

    /// `self[u <- replacement]`: replace the subtree rooted at `u`.
    pub fn replace_at(&self, u: &Path, replacement: Tree) -> Result<Tree, TreeError> {
        fn go(t: &Tree, steps: &[u32], replacement: Tree, full: &Path) -> Result<Tree, TreeError> {
            match steps.first() {
                None => Ok(replacement),
                Some(&step) => {
                    let idx = step as usize;
                    if step == 0 || idx > t.arity() {
                        return Err(TreeError::PathOutOfRange { path: full.clone() });
                    }
                    let mut children = t.children().to_vec();
                    children[idx - 1] = go(&children[idx - 1], &steps[1..], replacement, full)?;
                    Ok(Tree::new(t.label(), children))
                }
            }
        }
        go(self, &u.0, replacement, u)
    }

    /// All node addresses in depth-first, left-to-right order.
    pub fn paths(&self) -> Vec<Path> {
        fn go(t: &Tree, prefix: &Path, out: &mut Vec<Path>) {
            out.push(prefix.clone());
            for (i, c) in t.children().iter().enumerate() {
                go(c, &prefix.child(i as u32 + 1), out);
            }
        }
        let mut out = Vec::new();
        go(self, &Path::root(), &mut out);
        out
    }

    /// Distinct subtrees, in first-encounter order.
    pub fn subtree_set(&self) -> Vec<Tree> {
        let mut seen: HashSet<usize> = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            if seen.insert(t.ptr()) {
                for c in t.children().iter().rev() {
                    stack.push(c.clone());
                }
                out.push(t);
            }
        }
        out
    }

    pub fn distinct_subtree_count(&self) -> u64 {
        self.subtree_set().len() as u64
    }

    /// All distinct symbols occurring in the tree.
    pub fn symbols(&self) -> HashSet<Symbol> {
        let mut out = HashSet::new();
        for t in self.subtree_set() {
            out.insert(t.label());
        }
        out
    }

    pub fn contains_symbol(&self, sym: Symbol) -> bool {
        self.subtree_set().iter().any(|t| t.label() == sym)
    }

    /// Parameter indices occurring anywhere in the tree (as `y_i` leaves).
    pub fn param_indices(&self) -> std::collections::BTreeSet<u32> {
        let mut out = std::collections::BTreeSet::new();
        for t in self.subtree_set() {
            if let Some(i) = t.label().param_index() {
                out.insert(i);
            }
        }
        out
    }

    /// First-order substitution: replace occurrences of bound rank-0 symbols
    /// by trees. Substituted material is not rescanned.
    pub fn first_order_subst(&self, bindings: &HashMap<Symbol, Tree>) -> Result<Tree, TreeError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        fn go(
            t: &Tree,
            bindings: &HashMap<Symbol, Tree>,
            memo: &mut HashMap<usize, Tree>,
        ) -> Result<Tree, TreeError> {
            if let Some(r) = memo.get(&t.ptr()) {
                return Ok(r.clone());
            }
            let result = if let Some(image) = bindings.get(&t.label()) {
                if t.arity() != 0 {
                    return Err(TreeError::NonNullarySymbol {
                        symbol: t.label(),
                        rank: t.arity(),
                    });
                }
                image.clone()
            } else {
                let mut children = Vec::with_capacity(t.arity());
                for c in t.children() {
                    children.push(go(c, bindings, memo)?);
                }
                Tree::new(t.label(), children)
            };
            memo.insert(t.ptr(), result.clone());
            Ok(result)
        }
        go(self, bindings, &mut HashMap::new())
    }

    /// Replace the parameter leaves `y_1..y_n` by `args[0..n]`. Parameters
    /// beyond `args.len()` are left untouched.
    pub fn substitute_params(&self, args: &[Tree]) -> Tree {
        fn go(t: &Tree, args: &[Tree], memo: &mut HashMap<usize, Tree>) -> Tree {
            if let Some(r) = memo.get(&t.ptr()) {
                return r.clone();
            }
            let result = match t.label().param_index() {
                Some(i) if (i as usize) <= args.len() => args[i as usize - 1].clone(),
                _ => {
                    let children = t.children().iter().map(|c| go(c, args, memo)).collect();
                    Tree::new(t.label(), children)
                }
            };
            memo.insert(t.ptr(), result.clone());
            result
        }
        go(self, args, &mut HashMap::new())
    }

    /// Second-order substitution `self[[sigma_i <- t_i]]`: a bound label of
    /// rank k is replaced by its image with `y_j` standing for the (already
    /// substituted) j-th child.
    pub fn second_order_subst(&self, bindings: &HashMap<Symbol, Tree>) -> Result<Tree, TreeError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        fn go(
            t: &Tree,
            bindings: &HashMap<Symbol, Tree>,
            memo: &mut HashMap<usize, Tree>,
        ) -> Result<Tree, TreeError> {
            if let Some(r) = memo.get(&t.ptr()) {
                return Ok(r.clone());
            }
            let mut children = Vec::with_capacity(t.arity());
            for c in t.children() {
                children.push(go(c, bindings, memo)?);
            }
            let result = match bindings.get(&t.label()) {
                None => Tree::new(t.label(), children),
                Some(image) => {
                    if let Some(j) = image.param_indices().iter().rev().next().copied() {
                        if j as usize > t.arity() {
                            return Err(TreeError::ParamOutOfArity {
                                symbol: t.label(),
                                rank: t.arity(),
                                param: j,
                            });
                        }
                    }
                    image.substitute_params(&children)
                }
            };
            memo.insert(t.ptr(), result.clone());
            Ok(result)
        }
        go(self, bindings, &mut HashMap::new())
    }

    /// Replace hole leaves `X`/`X1`/`X2`… by the given trees, indexed by tag.
    pub fn fill_holes(&self, fillers: &HashMap<u8, Tree>) -> Tree {
        fn go(t: &Tree, fillers: &HashMap<u8, Tree>, memo: &mut HashMap<usize, Tree>) -> Tree {
            if let Some(r) = memo.get(&t.ptr()) {
                return r.clone();
            }
            let result = match t.label().as_hole() {
                Some(tag) if fillers.contains_key(&tag) => fillers[&tag].clone(),
                _ => {
                    let children = t.children().iter().map(|c| go(c, fillers, memo)).collect();
                    Tree::new(t.label(), children)
                }
            };
            memo.insert(t.ptr(), result.clone());
            result
        }
        go(self, fillers, &mut HashMap::new())
    }

    /// Check ranks against an alphabet (parameters and other reserved leaves
    /// are not looked up).
    pub fn check_ranks(&self, alphabet: &RankedAlphabet) -> Result<(), TreeError> {
        for t in self.subtree_set() {
            if t.label().is_param() {
                continue;
            }
            match alphabet.rank(t.label()) {
                None => return Err(TreeError::UnknownSymbol { symbol: t.label() }),
                Some(rank) if rank != t.arity() => {
                    return Err(TreeError::RankMismatch {
                        symbol: t.label(),
                        expected: rank,
                        got: t.arity(),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.node, &other.node)
    }
}

impl Eq for Tree {}

impl std::hash::Hash for Tree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ptr().hash(state);
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order by (size, label text, children); gives stable listings independent
/// of interning order.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.label().display().cmp(other.label().display()))
            .then_with(|| {
                for (a, b) in self.children().iter().zip(other.children()) {
                    let ord = a.cmp(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                self.arity().cmp(&other.arity())
            })
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if !self.children().is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children().iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of symbols with fixed ranks, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedAlphabet {
    symbols: Vec<(Symbol, usize)>,
    ranks: HashMap<Symbol, usize>,
}

impl RankedAlphabet {
    pub fn new(symbols: Vec<(Symbol, usize)>) -> Result<RankedAlphabet, TreeError> {
        let mut ranks = HashMap::new();
        for &(sym, rank) in &symbols {
            if ranks.insert(sym, rank).is_some() {
                return Err(TreeError::DuplicateSymbol {
                    name: sym.display().to_string(),
                });
            }
        }
        Ok(RankedAlphabet { symbols, ranks })
    }

    pub fn of(pairs: &[(&str, usize)]) -> RankedAlphabet {
        RankedAlphabet::new(
            pairs
                .iter()
                .map(|&(name, rank)| (Symbol::plain(name), rank))
                .collect(),
        )
        .expect("alphabet literal with duplicate symbol")
    }

    pub fn symbols(&self) -> &[(Symbol, usize)] {
        &self.symbols
    }

    pub fn rank(&self, sym: Symbol) -> Option<usize> {
        self.ranks.get(&sym).copied()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.ranks.contains_key(&sym)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn max_rank(&self) -> usize {
        self.symbols.iter().map(|&(_, r)| r).max().unwrap_or(0)
    }

    pub fn nullaries(&self) -> Vec<Symbol> {
        self.symbols
            .iter()
            .filter(|&&(_, r)| r == 0)
            .map(|&(s, _)| s)
            .collect()
    }

    /// Extend with additional symbols; duplicates are an error.
    pub fn extended(&self, extra: Vec<(Symbol, usize)>) -> Result<RankedAlphabet, TreeError> {
        let mut symbols = self.symbols.clone();
        symbols.extend(extra);
        RankedAlphabet::new(symbols)
    }

    /// All trees over this alphabet with size <= `max_size`, sorted by
    /// (size, text).
    pub fn enumerate_trees(&self, max_size: u64) -> Vec<Tree> {
        let mut by_size: Vec<Vec<Tree>> = vec![Vec::new(); (max_size + 1) as usize];
        for size in 1..=max_size {
            let mut level: Vec<Tree> = Vec::new();
            for &(sym, rank) in &self.symbols {
                if rank == 0 {
                    if size == 1 {
                        level.push(Tree::leaf(sym));
                    }
                    continue;
                }
                if size < 1 + rank as u64 {
                    continue;
                }
                // distribute size - 1 over `rank` children, each >= 1
                let budget = size - 1;
                let mut combos: Vec<Vec<Tree>> = vec![Vec::new()];
                let mut sizes: Vec<Vec<u64>> = vec![Vec::new()];
                for child in 0..rank {
                    let remaining_children = (rank - child - 1) as u64;
                    let mut next_combos = Vec::new();
                    let mut next_sizes = Vec::new();
                    for (combo, szs) in combos.iter().zip(&sizes) {
                        let used: u64 = szs.iter().sum();
                        let max_here = budget - used - remaining_children;
                        for child_size in 1..=max_here {
                            let fits = if child == rank - 1 {
                                used + child_size == budget
                            } else {
                                true
                            };
                            if !fits {
                                continue;
                            }
                            for t in &by_size[child_size as usize] {
                                let mut combo2 = combo.clone();
                                combo2.push(t.clone());
                                let mut szs2 = szs.clone();
                                szs2.push(child_size);
                                next_combos.push(combo2);
                                next_sizes.push(szs2);
                            }
                        }
                    }
                    combos = next_combos;
                    sizes = next_sizes;
                }
                for combo in combos {
                    level.push(Tree::new(sym, combo));
                }
            }
            by_size[size as usize] = level;
        }
        let mut out: Vec<Tree> = by_size.into_iter().flatten().collect();
        out.sort_by(|a, b| {
            a.size()
                .cmp(&b.size())
                .then_with(|| a.to_string().cmp(&b.to_string()))
        });
        out
    }
}

// ---------------------------------------------------------------------------
// Textual tree syntax: `f(a, g(b))`, nullary parentheses optional.
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TreeParser<'a> {
    fn new(src: &'a str) -> Self {
        TreeParser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let consumed = &self.src[..self.pos];
        let line = consumed.iter().filter(|&&b| b == b'\n').count() + 1;
        let col = consumed
            .iter()
            .rev()
            .take_while(|&&b| b != b'\n')
            .count()
            + 1;
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an identifier"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    fn args(&mut self) -> Result<Vec<Tree>, ParseError> {
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return Ok(Vec::new());
        }
        self.pos += 1;
        self.skip_ws();
        let mut args = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(args);
        }
        loop {
            args.push(self.tree()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }

    fn tree(&mut self) -> Result<Tree, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'$') => {
                self.pos += 1;
                Ok(Tree::leaf(Symbol::nop()))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut indices = Vec::new();
                self.skip_ws();
                if self.peek() != Some(b'}') {
                    loop {
                        self.skip_ws();
                        indices.push(self.number()?);
                        self.skip_ws();
                        match self.peek() {
                            Some(b',') => self.pos += 1,
                            Some(b'}') => break,
                            _ => return Err(self.error("expected ',' or '}'")),
                        }
                    }
                }
                self.eat(b'}')?;
                Ok(Tree::leaf(Symbol::index_set(indices)))
            }
            Some(b'<') => {
                self.pos += 1;
                self.skip_ws();
                let state = self.ident()?;
                self.skip_ws();
                self.eat(b',')?;
                self.skip_ws();
                self.eat(b'x')?;
                let child = self.number()?;
                if child == 0 {
                    return Err(self.error("variables are 1-based"));
                }
                self.skip_ws();
                self.eat(b'>')?;
                let args = self.args()?;
                Ok(Tree::new(Symbol::call(Symbol::plain(&state), child), args))
            }
            Some(b) if b.is_ascii_alphanumeric() || b == b'_' || b == b'\'' => {
                let name = self.ident()?;
                if let Some(rest) = name.strip_prefix('y') {
                    if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                        let index: u32 = rest
                            .parse()
                            .map_err(|_| self.error("parameter index out of range"))?;
                        if index == 0 {
                            return Err(self.error("parameters are 1-based"));
                        }
                        return Ok(Tree::leaf(Symbol::param(index)));
                    }
                }
                if name == "X" {
                    return Ok(Tree::leaf(Symbol::hole(0)));
                }
                if let Some(rest) = name.strip_prefix('X') {
                    if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                        let tag: u8 = rest
                            .parse()
                            .map_err(|_| self.error("hole index out of range"))?;
                        return Ok(Tree::leaf(Symbol::hole(tag)));
                    }
                }
                if name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit()) && name.len() > 1 {
                    return Err(self.error("bare variables cannot appear outside a state call"));
                }
                let args = self.args()?;
                Ok(Tree::new(Symbol::plain(&name), args))
            }
            _ => Err(self.error("expected a tree")),
        }
    }

    fn finish(mut self, t: Tree) -> Result<Tree, ParseError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("trailing input after tree"));
        }
        Ok(t)
    }
}

/// Parse the textual tree syntax. Identifiers of the shape `yN` are
/// parameters, `X`/`XN` are context holes, `$` is the pruned-branch leaf,
/// `{..}` an index-set leaf, and `<q,xN>(..)` a state call.
pub fn parse_tree(src: &str) -> Result<Tree, ParseError> {
    let mut parser = TreeParser::new(src);
    let t = parser.tree()?;
    parser.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(src: &str) -> Tree {
        parse_tree(src).unwrap()
    }

    #[test]
    fn node_access_cases() {
        let tree = t("f(a, b)");
        let (label, sub) = tree.node_access(&Path::root()).unwrap();
        assert_eq!(label, Symbol::plain("f"));
        assert_eq!(sub, tree);

        let (label, sub) = tree.node_access(&Path(vec![2])).unwrap();
        assert_eq!(label, Symbol::plain("b"));
        assert_eq!(sub, t("b"));

        let deep = t("f(g(a), b)");
        let (label, sub) = deep.node_access(&Path(vec![1, 1])).unwrap();
        assert_eq!(label, Symbol::plain("a"));
        assert_eq!(sub, t("a"));

        assert_eq!(
            deep.node_access(&Path(vec![3])),
            Err(TreeError::PathOutOfRange {
                path: Path(vec![3])
            })
        );
    }

    #[test]
    fn replace_at_cases() {
        let tree = t("f(a, b)");
        assert_eq!(tree.replace_at(&Path::root(), t("c")).unwrap(), t("c"));
        assert_eq!(
            tree.replace_at(&Path(vec![1]), t("g(b)")).unwrap(),
            t("f(g(b), b)")
        );
        assert_eq!(
            tree.replace_at(&Path(vec![2]), t("a")).unwrap(),
            t("f(a, a)")
        );
    }

    #[test]
    fn first_order_subst_cases() {
        let mut bindings = HashMap::new();
        bindings.insert(Symbol::param(1), t("a"));
        bindings.insert(Symbol::param(2), t("b"));
        assert_eq!(
            t("f(y1, y2)").first_order_subst(&bindings).unwrap(),
            t("f(a, b)")
        );

        // no re-scanning of substituted material
        let mut rec = HashMap::new();
        rec.insert(Symbol::param(1), t("g(y1)"));
        assert_eq!(t("y1").first_order_subst(&rec).unwrap(), t("g(y1)"));

        // no occurrence
        let mut none = HashMap::new();
        none.insert(Symbol::plain("b"), t("c"));
        assert_eq!(t("f(a, a)").first_order_subst(&none).unwrap(), t("f(a, a)"));

        // binding a symbol that occurs with children is an error
        let mut bad = HashMap::new();
        bad.insert(Symbol::plain("f"), t("c"));
        assert!(matches!(
            t("f(a, a)").first_order_subst(&bad),
            Err(TreeError::NonNullarySymbol { .. })
        ));
    }

    #[test]
    fn second_order_subst_cases() {
        let mut swap = HashMap::new();
        swap.insert(Symbol::plain("s"), t("f(y2, y1)"));
        assert_eq!(
            t("s(a, b)").second_order_subst(&swap).unwrap(),
            t("f(b, a)")
        );

        let mut proj = HashMap::new();
        proj.insert(Symbol::plain("s"), t("y1"));
        assert_eq!(t("s(s(a, b), c)").second_order_subst(&proj).unwrap(), t("a"));

        let mut none = HashMap::new();
        none.insert(Symbol::plain("g"), t("y1"));
        assert_eq!(
            t("f(a, b)").second_order_subst(&none).unwrap(),
            t("f(a, b)")
        );

        let mut bad = HashMap::new();
        bad.insert(Symbol::plain("g"), t("f(y1, y2)"));
        assert!(matches!(
            t("g(a)").second_order_subst(&bad),
            Err(TreeError::ParamOutOfArity { .. })
        ));
    }

    #[test]
    fn metrics_cases() {
        assert_eq!((t("a").size(), t("a").height()), (1, 1));
        let faa = t("f(a, a)");
        assert_eq!((faa.size(), faa.height()), (3, 2));
        assert_eq!(faa.distinct_subtree_count(), 2); // f(a,a) and a

        // perfectly balanced binary tree of height n: one distinct subtree per level
        let mut level = t("a");
        for _ in 0..5 {
            level = Tree::new(Symbol::plain("f"), vec![level.clone(), level]);
        }
        assert_eq!(level.height(), 6);
        assert_eq!(level.distinct_subtree_count(), 6);
    }

    #[test]
    fn display_roundtrip() {
        for src in ["a", "f(a, b)", "f(g(a), f(a, b))", "f(y1, $)", "h({1,3}, y2)"] {
            let tree = t(src);
            assert_eq!(tree.to_string(), src);
            assert_eq!(parse_tree(&tree.to_string()).unwrap(), tree);
        }
    }

    #[test]
    fn enumerate_small() {
        let alpha = RankedAlphabet::of(&[("a", 1), ("e", 0)]);
        let trees: Vec<String> = alpha
            .enumerate_trees(3)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(trees, vec!["e", "a(e)", "a(a(e))"]);
    }
}
