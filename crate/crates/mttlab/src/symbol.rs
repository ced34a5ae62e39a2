//! Interned symbols.
//!
//! Every tree label in this crate is a [`Symbol`]: a small copyable id into a
//! global intern table. Besides plain named symbols, a few structured kinds
//! are reserved for the machinery built on top of trees: parameters `y1,y2,…`,
//! state calls `<q,x1>`, pending calls `<q,p>` on marked inputs, look-ahead
//! marks, per-state output markers `#q`, the pruned-branch leaf `$`, leaves
//! carrying parameter-index sets `{1,3}`, and context holes `X1,X2`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// What a symbol is. Structured kinds keep the namespaces of the different
/// calculi apart without string munging.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// Ordinary named symbol (input/output alphabet, state, look-ahead state).
    Plain(String),
    /// Parameter `y_i` (1-based). Always rank 0 inside trees.
    Param(u32),
    /// State call `<state, x_child>` in a rule right-hand side; rank = rank of `state`.
    Call { state: Symbol, child: u32 },
    /// Pending call `<state, la>` in a provisional output; rank = rank of `state`.
    /// `tag` distinguishes holes when a context has several marked leaves.
    Pending { state: Symbol, la: Symbol, tag: u8 },
    /// Nullary input leaf standing for an arbitrary tree with the given
    /// look-ahead state.
    LaMark { la: Symbol, tag: u8 },
    /// Per-state output marker `#q`, rank 1.
    Sharp { state: Symbol },
    /// `$`: a pruned, parameter-free branch.
    Nop,
    /// A pruned branch recording the (sorted) indices of the parameters that
    /// occur inside it.
    IndexSet(Vec<u32>),
    /// Context hole. `Hole(0)` prints as `X`, `Hole(1)` as `X1`, …
    Hole(u8),
}

struct SymbolData {
    kind: SymbolKind,
    display: String,
}

/// An interned symbol. Equality, hashing and copying are O(1).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

struct Interner {
    by_kind: HashMap<SymbolKind, Symbol>,
    data: Vec<&'static SymbolData>,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        Mutex::new(Interner {
            by_kind: HashMap::new(),
            data: Vec::new(),
        })
    })
}

fn render(kind: &SymbolKind) -> String {
    match kind {
        SymbolKind::Plain(name) => name.clone(),
        SymbolKind::Param(i) => format!("y{i}"),
        SymbolKind::Call { state, child } => format!("<{},x{}>", state, child),
        SymbolKind::Pending { state, la, tag: 0 } => format!("<{},{}>", state, la),
        SymbolKind::Pending { state, la, tag } => format!("<{},{}@{}>", state, la, tag),
        SymbolKind::LaMark { la, tag: 0 } => format!("@{la}"),
        SymbolKind::LaMark { la, tag } => format!("@{la}#{tag}"),
        SymbolKind::Sharp { state } => format!("#{state}"),
        SymbolKind::Nop => "$".to_string(),
        SymbolKind::IndexSet(set) => {
            let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", items.join(","))
        }
        SymbolKind::Hole(0) => "X".to_string(),
        SymbolKind::Hole(n) => format!("X{n}"),
    }
}

impl Symbol {
    pub fn intern(kind: SymbolKind) -> Symbol {
        let mut table = interner().lock().unwrap();
        if let Some(&sym) = table.by_kind.get(&kind) {
            return sym;
        }
        let display = render(&kind);
        let id = table.data.len() as u32;
        let data: &'static SymbolData = Box::leak(Box::new(SymbolData {
            kind: kind.clone(),
            display,
        }));
        table.data.push(data);
        table.by_kind.insert(kind, Symbol(id));
        Symbol(id)
    }

    pub fn plain(name: &str) -> Symbol {
        Symbol::intern(SymbolKind::Plain(name.to_string()))
    }

    pub fn param(index: u32) -> Symbol {
        debug_assert!(index >= 1, "parameters are 1-based");
        Symbol::intern(SymbolKind::Param(index))
    }

    pub fn call(state: Symbol, child: u32) -> Symbol {
        debug_assert!(child >= 1, "variables are 1-based");
        Symbol::intern(SymbolKind::Call { state, child })
    }

    pub fn pending(state: Symbol, la: Symbol) -> Symbol {
        Symbol::intern(SymbolKind::Pending { state, la, tag: 0 })
    }

    pub fn pending_tagged(state: Symbol, la: Symbol, tag: u8) -> Symbol {
        Symbol::intern(SymbolKind::Pending { state, la, tag })
    }

    pub fn la_mark(la: Symbol) -> Symbol {
        Symbol::intern(SymbolKind::LaMark { la, tag: 0 })
    }

    pub fn la_mark_tagged(la: Symbol, tag: u8) -> Symbol {
        Symbol::intern(SymbolKind::LaMark { la, tag })
    }

    pub fn sharp(state: Symbol) -> Symbol {
        Symbol::intern(SymbolKind::Sharp { state })
    }

    pub fn nop() -> Symbol {
        Symbol::intern(SymbolKind::Nop)
    }

    pub fn index_set<I: IntoIterator<Item = u32>>(indices: I) -> Symbol {
        let mut set: Vec<u32> = indices.into_iter().collect();
        set.sort_unstable();
        set.dedup();
        Symbol::intern(SymbolKind::IndexSet(set))
    }

    pub fn hole(n: u8) -> Symbol {
        Symbol::intern(SymbolKind::Hole(n))
    }

    pub fn kind(self) -> &'static SymbolKind {
        let table = interner().lock().unwrap();
        &table.data[self.0 as usize].kind
    }

    pub fn display(self) -> &'static str {
        let table = interner().lock().unwrap();
        &table.data[self.0 as usize].display
    }

    pub fn is_param(self) -> bool {
        matches!(self.kind(), SymbolKind::Param(_))
    }

    pub fn param_index(self) -> Option<u32> {
        match self.kind() {
            SymbolKind::Param(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_call(self) -> Option<(Symbol, u32)> {
        match self.kind() {
            SymbolKind::Call { state, child } => Some((*state, *child)),
            _ => None,
        }
    }

    pub fn as_pending(self) -> Option<(Symbol, Symbol, u8)> {
        match self.kind() {
            SymbolKind::Pending { state, la, tag } => Some((*state, *la, *tag)),
            _ => None,
        }
    }

    pub fn as_la_mark(self) -> Option<(Symbol, u8)> {
        match self.kind() {
            SymbolKind::LaMark { la, tag } => Some((*la, *tag)),
            _ => None,
        }
    }

    pub fn as_sharp(self) -> Option<Symbol> {
        match self.kind() {
            SymbolKind::Sharp { state } => Some(*state),
            _ => None,
        }
    }

    pub fn is_nop(self) -> bool {
        matches!(self.kind(), SymbolKind::Nop)
    }

    pub fn as_index_set(self) -> Option<&'static [u32]> {
        match self.kind() {
            SymbolKind::IndexSet(set) => Some(set),
            _ => None,
        }
    }

    pub fn as_hole(self) -> Option<u8> {
        match self.kind() {
            SymbolKind::Hole(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_canonical() {
        assert_eq!(Symbol::plain("f"), Symbol::plain("f"));
        assert_ne!(Symbol::plain("f"), Symbol::plain("g"));
        assert_eq!(Symbol::param(1), Symbol::param(1));
        assert_ne!(Symbol::param(1), Symbol::plain("y1"));
    }

    #[test]
    fn display_forms() {
        let q = Symbol::plain("q");
        let p = Symbol::plain("p");
        assert_eq!(Symbol::call(q, 1).display(), "<q,x1>");
        assert_eq!(Symbol::pending(q, p).display(), "<q,p>");
        assert_eq!(Symbol::sharp(q).display(), "#q");
        assert_eq!(Symbol::nop().display(), "$");
        assert_eq!(Symbol::index_set([3, 1]).display(), "{1,3}");
        assert_eq!(Symbol::index_set::<[u32; 0]>([]).display(), "{}");
        assert_eq!(Symbol::hole(0).display(), "X");
        assert_eq!(Symbol::hole(2).display(), "X2");
        assert_eq!(Symbol::la_mark(p).display(), "@p");
    }
}
