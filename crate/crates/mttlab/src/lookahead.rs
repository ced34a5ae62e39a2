//! Total deterministic bottom-up tree automata: the look-ahead component of a
//! transducer.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::symbol::Symbol;
use crate::trees::{RankedAlphabet, Tree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("no transition for {symbol} on state vector ({pvec})", pvec = format_states(.pvec))]
    PartialTable { symbol: Symbol, pvec: Vec<Symbol> },
    #[error("transition for {symbol} uses unknown state {state}")]
    UnknownState { symbol: Symbol, state: Symbol },
    #[error("transition declared for unknown symbol {symbol}")]
    UnknownTransitionSymbol { symbol: Symbol },
    #[error("transition for {symbol} expects {expected} argument states, got {got}")]
    ArityMismatch {
        symbol: Symbol,
        expected: usize,
        got: usize,
    },
    #[error("input contains unknown symbol {symbol}")]
    UnknownSymbol { symbol: Symbol },
    #[error("automaton has no states")]
    NoStates,
}

fn format_states(states: &[Symbol]) -> String {
    states
        .iter()
        .map(|s| s.display().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A total deterministic bottom-up tree automaton `(P, Sigma, h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeAutomaton {
    states: Vec<Symbol>,
    alphabet: RankedAlphabet,
    transitions: HashMap<(Symbol, Vec<Symbol>), Symbol>,
}

impl TreeAutomaton {
    /// Build an automaton, rejecting partial or ill-formed tables. Totality is
    /// required up front: every symbol must have a transition for every state
    /// vector.
    pub fn new(
        states: Vec<Symbol>,
        alphabet: RankedAlphabet,
        transitions: HashMap<(Symbol, Vec<Symbol>), Symbol>,
    ) -> Result<TreeAutomaton, AutomatonError> {
        if states.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        let state_set: HashSet<Symbol> = states.iter().copied().collect();
        for ((symbol, pvec), target) in &transitions {
            let Some(rank) = alphabet.rank(*symbol) else {
                return Err(AutomatonError::UnknownTransitionSymbol { symbol: *symbol });
            };
            if pvec.len() != rank {
                return Err(AutomatonError::ArityMismatch {
                    symbol: *symbol,
                    expected: rank,
                    got: pvec.len(),
                });
            }
            for p in pvec.iter().chain(std::iter::once(target)) {
                if !state_set.contains(p) {
                    return Err(AutomatonError::UnknownState {
                        symbol: *symbol,
                        state: *p,
                    });
                }
            }
        }
        let automaton = TreeAutomaton {
            states,
            alphabet,
            transitions,
        };
        for &(symbol, rank) in automaton.alphabet.symbols() {
            for pvec in automaton.state_vectors(rank) {
                if !automaton.transitions.contains_key(&(symbol, pvec.clone())) {
                    return Err(AutomatonError::PartialTable { symbol, pvec });
                }
            }
        }
        Ok(automaton)
    }

    /// The one-state automaton accepting everything.
    pub fn trivial(alphabet: RankedAlphabet) -> TreeAutomaton {
        let p = Symbol::plain("p");
        let mut transitions = HashMap::new();
        for &(sym, rank) in alphabet.symbols() {
            transitions.insert((sym, vec![p; rank]), p);
        }
        TreeAutomaton::new(vec![p], alphabet, transitions).expect("trivial automaton is total")
    }

    pub fn states(&self) -> &[Symbol] {
        &self.states
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn transition(&self, symbol: Symbol, pvec: &[Symbol]) -> Option<Symbol> {
        self.transitions.get(&(symbol, pvec.to_vec())).copied()
    }

    pub fn transitions(&self) -> &HashMap<(Symbol, Vec<Symbol>), Symbol> {
        &self.transitions
    }

    /// All vectors in `P^k`, ordered by state declaration order.
    pub fn state_vectors(&self, k: usize) -> Vec<Vec<Symbol>> {
        let mut out: Vec<Vec<Symbol>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * self.states.len());
            for prefix in &out {
                for &p in &self.states {
                    let mut v = prefix.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// `h^(s)`: the state reached on `s`.
    pub fn run(&self, s: &Tree) -> Result<Symbol, AutomatonError> {
        let mut memo: HashMap<usize, Symbol> = HashMap::new();
        self.run_inner(s, &mut memo)
    }

    fn run_inner(
        &self,
        s: &Tree,
        memo: &mut HashMap<usize, Symbol>,
    ) -> Result<Symbol, AutomatonError> {
        let key = s.id();
        if let Some(&p) = memo.get(&key) {
            return Ok(p);
        }
        let mut pvec = Vec::with_capacity(s.arity());
        for c in s.children() {
            pvec.push(self.run_inner(c, memo)?);
        }
        let p = self
            .transition(s.label(), &pvec)
            .ok_or(AutomatonError::UnknownSymbol { symbol: s.label() })?;
        memo.insert(key, p);
        Ok(p)
    }

    /// States with a nonempty language, as the least fixpoint of "reachable
    /// from the leaves".
    pub fn nonempty_states(&self) -> HashSet<Symbol> {
        let mut nonempty: HashSet<Symbol> = HashSet::new();
        loop {
            let mut changed = false;
            for ((_, pvec), &target) in &self.transitions {
                if nonempty.contains(&target) {
                    continue;
                }
                if pvec.iter().all(|p| nonempty.contains(p)) {
                    nonempty.insert(target);
                    changed = true;
                }
            }
            if !changed {
                return nonempty;
            }
        }
    }

    /// A minimal-height witness of `L_p`, or `None` iff `L_p` is empty.
    /// Deterministic: ties resolve by symbol and state declaration order.
    pub fn sample_tree(&self, p: Symbol) -> Option<Tree> {
        let mut witness: HashMap<Symbol, Tree> = HashMap::new();
        for _round in 0..self.states.len() {
            let mut discovered: Vec<(Symbol, Tree)> = Vec::new();
            for &(sym, rank) in self.alphabet.symbols() {
                for pvec in self.state_vectors(rank) {
                    if !pvec.iter().all(|q| witness.contains_key(q)) {
                        continue;
                    }
                    let target = self.transition(sym, &pvec).unwrap();
                    if witness.contains_key(&target)
                        || discovered.iter().any(|&(t, _)| t == target)
                    {
                        continue;
                    }
                    let children = pvec.iter().map(|q| witness[q].clone()).collect();
                    discovered.push((target, Tree::new(sym, children)));
                }
            }
            if discovered.is_empty() {
                break;
            }
            for (target, tree) in discovered {
                witness.entry(target).or_insert(tree);
            }
        }
        witness.get(&p).cloned()
    }

    /// All trees in `L_p` of size <= `max_size`, sorted by (size, text).
    pub fn enumerate_trees(&self, p: Symbol, max_size: u64) -> Vec<Tree> {
        self.alphabet
            .enumerate_trees(max_size)
            .into_iter()
            .filter(|t| self.run(t) == Ok(p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_tree;

    fn parity() -> TreeAutomaton {
        let even = Symbol::plain("even");
        let odd = Symbol::plain("odd");
        let a = Symbol::plain("a");
        let e = Symbol::plain("e");
        let alphabet = RankedAlphabet::of(&[("a", 1), ("e", 0)]);
        let mut transitions = HashMap::new();
        transitions.insert((a, vec![even]), odd);
        transitions.insert((a, vec![odd]), even);
        transitions.insert((e, vec![]), even);
        TreeAutomaton::new(vec![even, odd], alphabet, transitions).unwrap()
    }

    #[test]
    fn trivial_runs() {
        let a = TreeAutomaton::trivial(RankedAlphabet::of(&[("f", 2), ("a", 0)]));
        let t = parse_tree("f(a, f(a, a))").unwrap();
        assert_eq!(a.run(&t).unwrap(), Symbol::plain("p"));
    }

    #[test]
    fn parity_runs() {
        let a = parity();
        assert_eq!(
            a.run(&parse_tree("a(a(e))").unwrap()).unwrap(),
            Symbol::plain("even")
        );
        assert_eq!(
            a.run(&parse_tree("a(e)").unwrap()).unwrap(),
            Symbol::plain("odd")
        );
    }

    #[test]
    fn partial_tables_rejected() {
        let even = Symbol::plain("even");
        let odd = Symbol::plain("odd");
        let a = Symbol::plain("a");
        let e = Symbol::plain("e");
        let alphabet = RankedAlphabet::of(&[("a", 1), ("e", 0)]);
        let mut transitions = HashMap::new();
        transitions.insert((a, vec![even]), odd);
        transitions.insert((e, vec![]), even);
        assert!(matches!(
            TreeAutomaton::new(vec![even, odd], alphabet, transitions),
            Err(AutomatonError::PartialTable { .. })
        ));
    }

    #[test]
    fn nonempty_and_samples() {
        let a = parity();
        let nonempty = a.nonempty_states();
        assert!(nonempty.contains(&Symbol::plain("even")));
        assert!(nonempty.contains(&Symbol::plain("odd")));

        assert_eq!(
            a.sample_tree(Symbol::plain("even")),
            Some(parse_tree("e").unwrap())
        );
        assert_eq!(
            a.sample_tree(Symbol::plain("odd")),
            Some(parse_tree("a(e)").unwrap())
        );

        let trivial = TreeAutomaton::trivial(RankedAlphabet::of(&[("a", 1), ("e", 0)]));
        assert_eq!(
            trivial.sample_tree(Symbol::plain("p")),
            Some(parse_tree("e").unwrap())
        );
    }

    #[test]
    fn junk_state_excluded() {
        // A state no transition produces is empty.
        let p = Symbol::plain("p");
        let junk = Symbol::plain("junk");
        let a = Symbol::plain("a");
        let e = Symbol::plain("e");
        let alphabet = RankedAlphabet::of(&[("a", 1), ("e", 0)]);
        let mut transitions = HashMap::new();
        transitions.insert((e, vec![]), p);
        transitions.insert((a, vec![p]), p);
        transitions.insert((a, vec![junk]), p);
        let automaton = TreeAutomaton::new(vec![p, junk], alphabet, transitions).unwrap();
        let nonempty = automaton.nonempty_states();
        assert!(nonempty.contains(&p));
        assert!(!nonempty.contains(&junk));
        assert_eq!(automaton.sample_tree(junk), None);
    }

    #[test]
    fn enumerate_examples() {
        let trivial = TreeAutomaton::trivial(RankedAlphabet::of(&[("a", 1), ("e", 0)]));
        let p = Symbol::plain("p");
        let listed: Vec<String> = trivial
            .enumerate_trees(p, 3)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(listed, vec!["e", "a(e)", "a(a(e))"]);

        let par = parity();
        let evens: Vec<String> = par
            .enumerate_trees(Symbol::plain("even"), 3)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(evens, vec!["e", "a(a(e))"]);

        assert!(par.enumerate_trees(Symbol::plain("even"), 0).is_empty());
    }

    #[test]
    fn membership_matches_enumeration() {
        let par = parity();
        for p in [Symbol::plain("even"), Symbol::plain("odd")] {
            let listed: std::collections::HashSet<Tree> =
                par.enumerate_trees(p, 8).into_iter().collect();
            for t in par.alphabet().enumerate_trees(8) {
                assert_eq!(par.run(&t).unwrap() == p, listed.contains(&t));
            }
        }
    }

    #[test]
    fn nonempty_matches_bounded_enumeration() {
        // pumping bound |P| * max_rank + 1
        let par = parity();
        let bound = (par.states().len() * par.alphabet().max_rank() + 1) as u64;
        let nonempty = par.nonempty_states();
        for &p in par.states() {
            assert_eq!(
                nonempty.contains(&p),
                !par.enumerate_trees(p, bound).is_empty()
            );
        }
    }
}
