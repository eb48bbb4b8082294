//! Insertion of a coderivation into a comap, `δ_f(i) = f^{A*} ∘ i − (−1)^{|f||i|} i ∘ f^{A}`,
//! evaluated form by form.
//!
//! A form `⟨u⟩_{k,l}` is read cyclically. Each term of `δ_f(i)` replaces a
//! cyclically consecutive block of `u` carrying at most one of the two marks
//! (the module slot and the evaluation letter) by `f` of that block. Blocks
//! through the evaluation letter come from the induced action on `A*[1]`.

use std::fmt;

use super::coder::CoderComponents;
use super::comap::ComapForms;
use crate::error::{structural, Result};
use crate::graded::{sign_of, GradedSpace, Word};

/// One block of a form of length `n` with module slot `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BlockPlan {
    pub start: usize,
    pub len: usize,
    /// Block contains the evaluation letter.
    pub has_x: bool,
    /// Letters taken from the front when the block wraps around.
    pub wrap: usize,
    pub new_k: usize,
}

impl BlockPlan {
    /// Indices of `u` fed to `f`, in order.
    pub fn input(&self, n: usize) -> Vec<usize> {
        if self.has_x {
            (self.start..n).chain(0..self.wrap).collect()
        } else {
            (self.start..self.start + self.len).collect()
        }
    }

    /// The new word with `o` substituted for the block.
    pub fn output(&self, u: &[usize], o: usize) -> Word {
        if self.has_x {
            let mut w = u[self.wrap..self.start].to_vec();
            w.push(o);
            w
        } else {
            let mut w = u[..self.start].to_vec();
            w.push(o);
            w.extend_from_slice(&u[self.start + self.len..]);
            w
        }
    }

    /// Sign of the term before the global prefactor.
    pub fn sign(&self, sp: &GradedSpace, u: &[usize], f_degree: i64) -> i64 {
        if self.has_x {
            let front = sp.word_degree(&u[..self.wrap]);
            let rest = sp.word_degree(&u[self.wrap..]);
            sign_of(front * rest + f_degree * sp.word_degree(&u[self.wrap..self.start]))
        } else {
            sign_of(f_degree * sp.word_degree(&u[..self.start]))
        }
    }
}

pub(crate) fn block_plans(n: usize, k: usize) -> Vec<BlockPlan> {
    let mut out = Vec::new();
    for len in 1..n {
        for start in 0..n {
            let end = start + len;
            if end < n {
                let new_k = if start <= k && k < end {
                    start
                } else if end <= k {
                    k + 1 - len
                } else {
                    k
                };
                out.push(BlockPlan { start, len, has_x: false, wrap: 0, new_k });
            } else {
                let wrap = end - n;
                if wrap <= k && start > k {
                    out.push(BlockPlan { start, len, has_x: true, wrap, new_k: k - wrap });
                }
            }
        }
    }
    out
}

/// `δ_f(i)`, exact through the truncation weight.
pub fn delta(f: &CoderComponents, i: &ComapForms) -> Result<ComapForms> {
    comap_differential(f, f, i)
}

/// The induced map on comaps for a pair of bimodule structures: `dn` acts on
/// blocks through the evaluation letter (the target side), `dm` elsewhere.
pub fn comap_differential(dm: &CoderComponents, dn: &CoderComponents, form: &ComapForms) -> Result<ComapForms> {
    dm.frame().check_same(form.frame())?;
    dn.frame().check_same(form.frame())?;
    if dm.degree() != dn.degree() {
        return structural(format!("module differentials of degrees {} and {}", dm.degree(), dn.degree()));
    }
    let frame = form.frame();
    let sp = &frame.space;
    let fdeg = dm.degree();
    let prefactor = -sign_of(fdeg * form.degree());
    let mut out = ComapForms::zero(frame, fdeg + form.degree());
    if form.is_zero() || (dm.is_zero() && dn.is_zero()) {
        return Ok(out);
    }
    for n in 2..=frame.weight {
        let words = sp.words(n);
        for k in 0..n - 1 {
            let plans = block_plans(n, k);
            for u in &words {
                let mut acc = frame.ring.zero();
                for p in &plans {
                    let f = if p.has_x { dn } else { dm };
                    let input: Word = p.input(n).into_iter().map(|j| u[j]).collect();
                    let Some(row) = f.output(&input) else { continue };
                    let s = p.sign(sp, u, fdeg) * prefactor;
                    for (o, c) in row {
                        let Some(v) = form.get(p.new_k, &p.output(u, *o)) else { continue };
                        let t = c * v;
                        acc = if s > 0 { &acc + &t } else { &acc - &t };
                    }
                }
                out.add_entry(k, u.clone(), acc);
            }
        }
    }
    Ok(out)
}

/// A symbolic term of `δ_f(i)` on a `(k, l)` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionTerm {
    pub arity: usize,
    /// 1-based position of the first letter of the block.
    pub position: usize,
    pub wraps: bool,
    pub target: (usize, usize),
    pub rendered: String,
}

impl fmt::Display for InsertionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f_{} @ position {} ({}) -> ({},{}): {}",
            self.arity,
            self.position,
            if self.wraps { "wrap" } else { "nowrap" },
            self.target.0,
            self.target.1,
            self.rendered
        )
    }
}

/// Letters `a, b, c, ...`, then `x1, x2, ...` past the alphabet.
fn letter_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|j| if j < 26 { ((b'a' + j as u8) as char).to_string() } else { format!("x{}", j + 1) })
        .collect()
}

/// Every term of the insertion formula for the slot `(k, l)`, using `f`
/// components of arity at most `max_arity`. The inputs are named `a, b, ...`
/// in order, so the module slot is letter `k` and the evaluation letter is last.
pub fn enumerate_insertion_terms(k: usize, l: usize, max_arity: usize) -> Vec<InsertionTerm> {
    let n = k + l + 2;
    let names = letter_names(n);
    block_plans(n, k)
        .into_iter()
        .filter(|p| p.len <= max_arity)
        .map(|p| {
            let inner: Vec<&str> = p.input(n).into_iter().map(|j| names[j].as_str()).collect();
            let fused = format!("f_{}({})", p.len, inner.join(","));
            let mut letters: Vec<String> = if p.has_x {
                names[p.wrap..p.start].to_vec()
            } else {
                names[..p.start].to_vec()
            };
            letters.push(fused);
            if !p.has_x {
                letters.extend_from_slice(&names[p.start + p.len..]);
            }
            let nn = n - p.len + 1;
            let target = (p.new_k, nn - p.new_k - 2);
            InsertionTerm {
                arity: p.len,
                position: p.start + 1,
                wraps: p.has_x && p.wrap > 0,
                target,
                rendered: format!("⟨{}⟩_{{{},{}}}", letters.join(","), target.0, target.1),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_counts() {
        let count = |k: usize, l: usize| enumerate_insertion_terms(k, l, k + l + 2).len();
        assert_eq!(count(0, 0), 2);
        assert_eq!(count(1, 0), 5);
        assert_eq!(count(0, 1), 5);
        assert_eq!(count(2, 0), 9);
        assert_eq!(count(0, 2), 9);
        assert_eq!(count(1, 1), 10);
    }

    #[test]
    fn targets_have_valid_slots() {
        for (k, l) in [(0, 0), (2, 1), (1, 3)] {
            for t in enumerate_insertion_terms(k, l, 8) {
                assert_eq!(t.target.0 + t.target.1 + 1, k + l + 2 - t.arity);
            }
        }
    }

    #[test]
    fn wrapping_term_renders() {
        let rendered = |k, l| -> Vec<String> { enumerate_insertion_terms(k, l, 9).iter().map(|t| t.rendered.clone()).collect() };
        assert!(rendered(1, 0).contains(&"⟨b,f_2(c,a)⟩_{0,0}".to_string()));
        assert!(rendered(1, 0).contains(&"⟨f_2(a,b),c⟩_{0,0}".to_string()));
        assert!(rendered(1, 1).contains(&"⟨b,f_3(c,d,a)⟩_{0,0}".to_string()));
        assert!(!rendered(2, 0).iter().any(|t| t.starts_with("⟨a,b,f_2(c,d)⟩")));
    }
}
