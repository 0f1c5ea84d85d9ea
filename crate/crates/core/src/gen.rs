//! Named digraphs from short expressions, and random HH instances.
//!
//! Expression grammar:
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := [count '*'] atom
//! atom  := 'alpha' N | 'zeta4' | 'c3' | 'one' | 'k' N | 'chain' N
//!        | 'inflate' '(' expr ';' N (',' N)* ')' | '(' expr ')'
//! ```
//!
//! `c3` and `one` are the looped 3-cycle and looped point, `k N` is the
//! complete reflexive graph and `chain N` the total order on `N` elements.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::Digraph;
use crate::error::{input, Result};
use crate::involution::{make_alpha, make_zeta4};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Num(usize),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            match text.parse() {
                Ok(v) => out.push(Token::Num(v)),
                Err(_) => return input(format!("number `{text}` is too large")),
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Word(chars[start..i].iter().collect()));
        } else if "+*();,".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return input(format!("unexpected character `{c}` in expression"));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Token::Sym(s)) if s == c => Ok(()),
            other => input(format!("expected `{c}`, found {other:?}")),
        }
    }

    fn num(&mut self) -> Result<usize> {
        match self.next() {
            Some(Token::Num(v)) => Ok(v),
            other => input(format!("expected a number, found {other:?}")),
        }
    }

    fn expr(&mut self) -> Result<Digraph> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(&Token::Sym('+')) {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Digraph::disjoint_union(&parts)
        })
    }

    fn term(&mut self) -> Result<Digraph> {
        if let Some(Token::Num(count)) = self.peek().cloned() {
            self.pos += 1;
            self.eat('*')?;
            let atom = self.atom()?;
            return Ok(atom.copies(count));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Digraph> {
        match self.next() {
            Some(Token::Sym('(')) => {
                let d = self.expr()?;
                self.eat(')')?;
                Ok(d)
            }
            Some(Token::Word(w)) => match w.as_str() {
                "alpha" => Ok(make_alpha(self.num()?)),
                "zeta4" => Ok(make_zeta4()),
                "c3" => Ok(Digraph::reflexive_cycle(3)),
                "one" => Ok(Digraph::one_looped()),
                "k" => Ok(Digraph::complete_reflexive(self.num()?)),
                "chain" => Ok(Digraph::chain(self.num()?)),
                "inflate" => {
                    self.eat('(')?;
                    let d = self.expr()?;
                    self.eat(';')?;
                    let mut sizes = vec![self.num()?];
                    while self.peek() == Some(&Token::Sym(',')) {
                        self.pos += 1;
                        sizes.push(self.num()?);
                    }
                    self.eat(')')?;
                    Ok(d.inflate(&sizes)?.0)
                }
                other => input(format!("unknown digraph `{other}`")),
            },
            other => input(format!("expected a digraph, found {other:?}")),
        }
    }
}

/// Builds the digraph denoted by `expr`, e.g. `2*c3 + one` or
/// `inflate(alpha 2; 2,1,1,2)`.
pub fn parse_expression(expr: &str) -> Result<Digraph> {
    let mut p = Parser {
        tokens: tokenize(expr)?,
        pos: 0,
    };
    let d = p.expr()?;
    if p.pos != p.tokens.len() {
        return input(format!(
            "trailing input after expression: {:?}",
            &p.tokens[p.pos..]
        ));
    }
    Ok(d)
}

/// The family a random instance was drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HhFamily {
    AlphaMix,
    ZetaMix,
    C3OneMix,
    Poset,
}

fn inflate_randomly<R: Rng>(rng: &mut R, d: &Digraph, max_block: usize) -> Digraph {
    let sizes: Vec<usize> = d.vertices().map(|_| rng.gen_range(1..=max_block)).collect();
    d.inflate(&sizes).expect("positive sizes").0
}

fn inflate_and_shuffle<R: Rng>(rng: &mut R, d: &Digraph, max_block: usize) -> Digraph {
    let d = inflate_randomly(rng, d, max_block);
    let mut perm: Vec<usize> = d.vertices().collect();
    perm.shuffle(rng);
    d.permute(&perm).unwrap()
}

/// Inflation of `α_{n₁} + … + α_{n_m}` with some `nᵢ ≥ 2`.
pub fn random_alpha_mix<R: Rng>(rng: &mut R) -> Digraph {
    let mut parts = vec![make_alpha(rng.gen_range(2..=3))];
    for _ in 0..rng.gen_range(0..=2) {
        parts.push(make_alpha(rng.gen_range(0..=3)));
    }
    parts.shuffle(rng);
    inflate_and_shuffle(rng, &Digraph::disjoint_union(&parts), 2)
}

/// Inflation of ζ₄ plus copies of α₀ and α₁.
pub fn random_zeta_mix<R: Rng>(rng: &mut R) -> Digraph {
    let mut parts = vec![make_zeta4()];
    for _ in 0..rng.gen_range(0..=2) {
        parts.push(match rng.gen_range(0..3) {
            0 => make_zeta4(),
            1 => make_alpha(1),
            _ => make_alpha(0),
        });
    }
    parts.shuffle(rng);
    inflate_and_shuffle(rng, &Digraph::disjoint_union(&parts), 2)
}

/// Inflation of `k·C₃° + l·𝟏°` with `k ≥ 1`.
pub fn random_c3_one_mix<R: Rng>(rng: &mut R) -> Digraph {
    let k = rng.gen_range(1..=3);
    let l = rng.gen_range(0..=3);
    let d = Digraph::disjoint_union(&[
        Digraph::reflexive_cycle(3).copies(k),
        Digraph::one_looped().copies(l),
    ]);
    inflate_and_shuffle(rng, &d, 3)
}

/// Covering relation of a random rooted tree, edges pointing to the parent.
fn random_tree_covers<R: Rng>(rng: &mut R, size: usize, offset: usize) -> Vec<(usize, usize)> {
    (1..size)
        .map(|v| (offset + v, offset + rng.gen_range(0..v)))
        .collect()
}

fn order(n: usize, covers: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, covers)
        .unwrap()
        .reflexive_closure()
        .transitive_closure()
}

/// A random poset from one of the HH shapes (chain components, tree, dual
/// tree, split, chain-product lattice) with at least one comparable pair.
pub fn random_hh_poset<R: Rng>(rng: &mut R) -> Digraph {
    match rng.gen_range(0..5) {
        0 => {
            let mut parts = vec![Digraph::chain(rng.gen_range(2..=4))];
            for _ in 0..rng.gen_range(0..=2) {
                parts.push(Digraph::chain(rng.gen_range(1..=3)));
            }
            Digraph::disjoint_union(&parts)
        }
        1 => {
            let size = rng.gen_range(2..=7);
            order(size, &random_tree_covers(rng, size, 0))
        }
        2 => {
            let size = rng.gen_range(2..=7);
            order(size, &random_tree_covers(rng, size, 0)).reverse()
        }
        3 => {
            // Ideal branching upward from 0, filter branching downward from
            // its top, every maximal ideal element below every minimal
            // filter element.
            let a = rng.gen_range(1..=4);
            let b = rng.gen_range(1..=4);
            let mut covers: Vec<(usize, usize)> = random_tree_covers(rng, a, 0)
                .into_iter()
                .map(|(x, y)| (y, x))
                .collect();
            covers.extend(random_tree_covers(rng, b, a));
            let up_leaves: Vec<usize> = (0..a)
                .filter(|&x| covers.iter().all(|&(u, _)| u != x))
                .collect();
            let down_leaves: Vec<usize> = (a..a + b)
                .filter(|&y| covers.iter().all(|&(_, v)| v != y))
                .collect();
            for &x in &up_leaves {
                for &y in &down_leaves {
                    covers.push((x, y));
                }
            }
            order(a + b, &covers)
        }
        _ => {
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(2..=3));
            Digraph::from_fn(a * b, |u, v| u / b <= v / b && u % b <= v % b)
        }
    }
}

/// Random inflation of a random HH poset: an HH quasiorder.
pub fn random_hh_quasiorder<R: Rng>(rng: &mut R) -> Digraph {
    let p = random_hh_poset(rng);
    inflate_and_shuffle(rng, &p, 2)
}

/// A random HH, bidirectionally disconnected instance from `family`.
pub fn random_hh_instance<R: Rng>(rng: &mut R, family: HhFamily) -> Digraph {
    match family {
        HhFamily::AlphaMix => random_alpha_mix(rng),
        HhFamily::ZetaMix => random_zeta_mix(rng),
        HhFamily::C3OneMix => random_c3_one_mix(rng),
        HhFamily::Poset => random_hh_quasiorder(rng),
    }
}
