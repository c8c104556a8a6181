//! Open books: a fiber surface plus a monodromy written as a word of Dehn
//! twists.
//!
//! A word `l1 l2 … ln` denotes the composite `τ_{l1} ∘ τ_{l2} ∘ … ∘ τ_{ln}`,
//! so the rightmost letter acts first. Lowercase letters are right-handed
//! twists and uppercase letters their inverses.
//!
//! Genus 1 uses the letters `x` and `y`, twists along the cores of the two
//! ribbons. From genus 2 on the alphabet is `x1 … xg`, `y1 … yg` (the two
//! ribbon cores of each handle) and `z1 … z(g-1)`, where `zk` runs once
//! through the `x` ribbons of handles `k` and `k+1`. Consecutive curves of
//! `x1 y1 z1 y2 z2 … yg xg` meet once and the rest are disjoint.

use crate::surface::{
    apply_twist, find_left_witness, ArcBasis, CombinatorialSurface, LeftWitness, Path,
    SurfaceError,
};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpenBookError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("alphabet curve `{0}` is not a simple closed curve")]
    BadCurve(String),
    #[error("duplicate alphabet name `{0}`")]
    DuplicateName(String),
    #[error("alphabet name `{0}` must be one lowercase letter followed by optional digits")]
    BadName(String),
}

/// One named twisting curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    pub curve: Path,
}

/// The curves a twist word may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub letters: Vec<Letter>,
}

fn valid_name(n: &str) -> bool {
    let mut ch = n.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_lowercase()) && ch.all(|c| c.is_ascii_digit())
}

impl Alphabet {
    pub fn standard(s: &CombinatorialSurface) -> Alphabet {
        let g = s.genus();
        let mut letters = Vec::new();
        if g == 1 {
            letters.push(Letter { name: "x".into(), curve: s.dual_loop(0) });
            letters.push(Letter { name: "y".into(), curve: s.dual_loop(1) });
            return Alphabet { letters };
        }
        for h in 0..g {
            letters.push(Letter { name: format!("x{}", h + 1), curve: s.dual_loop(2 * h) });
            letters.push(Letter { name: format!("y{}", h + 1), curve: s.dual_loop(2 * h + 1) });
        }
        for h in 0..g - 1 {
            let curve = Path::closed(vec![s.plus_side(2 * h + 2), s.plus_side(2 * h)]);
            letters.push(Letter { name: format!("z{}", h + 1), curve });
        }
        Alphabet { letters }
    }

    /// Alphabet from explicit curves, each given as a signed word in the
    /// reference arcs (`+r` / `-r`, 1-based).
    pub fn custom(
        s: &CombinatorialSurface,
        entries: &[(String, Vec<i32>)],
    ) -> Result<Alphabet, OpenBookError> {
        let mut letters: Vec<Letter> = Vec::new();
        for (name, word) in entries {
            if !valid_name(name) {
                return Err(OpenBookError::BadName(name.clone()));
            }
            if letters.iter().any(|l| &l.name == name) {
                return Err(OpenBookError::DuplicateName(name.clone()));
            }
            if word.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > s.arc_count()) {
                return Err(OpenBookError::BadCurve(name.clone()));
            }
            let curve = s.normalize(&Path::closed(s.cross_of_word(word)))?;
            if curve.cross.is_empty() || s.self_crossings(&curve) != 0 {
                return Err(OpenBookError::BadCurve(name.clone()));
            }
            letters.push(Letter { name: name.clone(), curve });
        }
        Ok(Alphabet { letters })
    }

    pub fn curves(&self) -> Vec<Path> {
        self.letters.iter().map(|l| l.curve.clone()).collect()
    }

    fn lookup(&self, token: &str) -> Option<usize> {
        if let Some(i) = self.letters.iter().position(|l| l.name == token) {
            return Some(i);
        }
        // `x` and `x1` are interchangeable.
        let alt = if token.len() == 1 {
            format!("{token}1")
        } else if token.ends_with('1') && token.len() == 2 {
            token[..1].to_string()
        } else {
            return None;
        };
        self.letters.iter().position(|l| l.name == alt)
    }

    /// Parses a twist word. Whitespace is ignored.
    pub fn parse(&self, word: &str) -> Result<TwistWord, OpenBookError> {
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if !c.is_ascii_alphabetic() {
                return Err(OpenBookError::UnknownLetter(c.to_string()));
            }
            let mut tok = String::new();
            tok.push(c.to_ascii_lowercase());
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                tok.push(chars[i]);
                i += 1;
            }
            let idx = self.lookup(&tok).ok_or_else(|| {
                let mut t = tok.clone();
                if c.is_ascii_uppercase() {
                    t = t.to_uppercase();
                }
                OpenBookError::UnknownLetter(t)
            })?;
            out.push((idx, if c.is_ascii_uppercase() { -1 } else { 1 }));
        }
        Ok(TwistWord(out))
    }

    pub fn format(&self, w: &TwistWord) -> String {
        let mut s = String::new();
        for &(i, e) in &w.0 {
            let n = &self.letters[i].name;
            if e > 0 {
                s.push_str(n);
            } else {
                s.push_str(&n.to_uppercase());
            }
        }
        s
    }
}

/// Sequence of `(alphabet index, ±1)`; the last entry acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistWord(pub Vec<(usize, i8)>);

impl TwistWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn concat(&self, o: &TwistWord) -> TwistWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        TwistWord(v)
    }

    pub fn power(&self, n: usize) -> TwistWord {
        TwistWord(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }
}

/// A fiber surface with monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenBook {
    pub surface: CombinatorialSurface,
    pub alphabet: Alphabet,
    pub word: TwistWord,
}

/// Names accepted by [`OpenBook::preset`], `boundary-twist(n)` aside.
pub const PRESETS: &[&str] = &[
    "right-trefoil",
    "left-trefoil",
    "figure-eight",
    "identity-g1",
    "core-plus1-left-trefoil",
    "core-minus1-right-trefoil",
];

impl OpenBook {
    pub fn new(genus: usize, word: &str) -> Result<OpenBook, OpenBookError> {
        let surface = CombinatorialSurface::new(genus)?;
        let alphabet = Alphabet::standard(&surface);
        let word = alphabet.parse(word)?;
        Ok(OpenBook { surface, alphabet, word })
    }

    pub fn with_alphabet(
        genus: usize,
        entries: &[(String, Vec<i32>)],
        word: &str,
    ) -> Result<OpenBook, OpenBookError> {
        let surface = CombinatorialSurface::new(genus)?;
        let alphabet = Alphabet::custom(&surface, entries)?;
        let word = alphabet.parse(word)?;
        Ok(OpenBook { surface, alphabet, word })
    }

    /// Named examples. `boundary-twist(n)` is `(xy)^{6n}`, the n-th power of
    /// the boundary twist via the chain relation.
    pub fn preset(name: &str) -> Result<OpenBook, OpenBookError> {
        let w = match name {
            "right-trefoil" => String::from("xy"),
            "left-trefoil" => String::from("XY"),
            "figure-eight" => String::from("xY"),
            "identity-g1" => String::new(),
            "core-plus1-left-trefoil" => format!("{}XY", "xy".repeat(6)),
            "core-minus1-right-trefoil" => format!("{}xy", "YX".repeat(6)),
            _ => {
                let n = parse_boundary_twist(name)
                    .ok_or_else(|| OpenBookError::UnknownPreset(name.into()))?;
                if n >= 0 {
                    "xy".repeat(6 * n as usize)
                } else {
                    "YX".repeat(6 * n.unsigned_abs() as usize)
                }
            }
        };
        OpenBook::new(1, &w)
    }

    pub fn genus(&self) -> usize {
        self.surface.genus()
    }

    pub fn word_string(&self) -> String {
        self.alphabet.format(&self.word)
    }

    /// Image of an arc or curve under the monodromy.
    pub fn monodromy(&self, p: &Path) -> Result<Path, SurfaceError> {
        let mut cur = p.clone();
        for &(c, e) in self.word.0.iter().rev() {
            cur = apply_twist(&self.surface, &cur, &self.alphabet.letters[c].curve, e)?;
        }
        Ok(cur)
    }

    /// Boundary connected sum. Handles of `other` are placed after those of
    /// `self`, and its letters renamed accordingly.
    pub fn boundary_connect_sum(&self, other: &OpenBook) -> Result<OpenBook, OpenBookError> {
        let g1 = self.genus();
        let g = g1 + other.genus();
        let surface = CombinatorialSurface::new(g)?;
        let mut letters: Vec<Letter> = Vec::new();
        let mut word = Vec::new();
        for (ob, shift) in [(self, 0usize), (other, 2 * g1)] {
            let map = shifted_letters(&ob.surface, &surface, &ob.alphabet, shift)?;
            let base = letters.len();
            for l in map {
                if letters.iter().any(|m| m.name == l.name) {
                    return Err(OpenBookError::DuplicateName(l.name));
                }
                letters.push(l);
            }
            word.extend(ob.word.0.iter().map(|&(i, e)| (base + i, e)));
        }
        Ok(OpenBook { surface, alphabet: Alphabet { letters }, word: TwistWord(word) })
    }

    /// Searches arcs obtained from the standard basis by at most `bound`
    /// twists for one sent to the left by the monodromy.
    pub fn non_right_veering_certificate(
        &self,
        bound: usize,
    ) -> Result<Option<LeftWitness>, SurfaceError> {
        let seeds = ArcBasis::standard(&self.surface).arcs;
        let curves = self.alphabet.curves();
        find_left_witness(&self.surface, &seeds, &curves, bound, |a| self.monodromy(a))
    }
}

fn parse_boundary_twist(name: &str) -> Option<i64> {
    let rest = name.strip_prefix("boundary-twist")?;
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix(':'))?;
    inner.trim().parse().ok()
}

/// Copies the letters of a summand into the sum surface, moving reference
/// arc `r` to `r + shift` and renaming handle indices.
fn shifted_letters(
    from: &CombinatorialSurface,
    to: &CombinatorialSurface,
    a: &Alphabet,
    shift: usize,
) -> Result<Vec<Letter>, OpenBookError> {
    let hshift = shift / 2;
    let mut out = Vec::new();
    for l in &a.letters {
        let word: Vec<i32> = from
            .word_of(&l.curve.cross)
            .into_iter()
            .map(|x| x.signum() * (x.abs() + shift as i32))
            .collect();
        let curve = to.normalize(&Path::closed(to.cross_of_word(&word)))?;
        let name = rename(&l.name, hshift);
        out.push(Letter { name, curve });
    }
    Ok(out)
}

fn rename(name: &str, hshift: usize) -> String {
    let head = &name[..1];
    let idx: usize = if name.len() > 1 { name[1..].parse().unwrap_or(1) } else { 1 };
    format!("{head}{}", idx + hshift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Endpoint;

    #[test]
    fn preset_words() {
        assert_eq!(OpenBook::preset("right-trefoil").unwrap().word_string(), "xy");
        assert_eq!(OpenBook::preset("left-trefoil").unwrap().word_string(), "XY");
        assert_eq!(OpenBook::preset("figure-eight").unwrap().word_string(), "xY");
        assert_eq!(OpenBook::preset("identity-g1").unwrap().word.len(), 0);
        assert_eq!(OpenBook::preset("boundary-twist(2)").unwrap().word.len(), 24);
        assert_eq!(OpenBook::preset("boundary-twist:1").unwrap().word.len(), 12);
        assert!(matches!(OpenBook::preset("nope"), Err(OpenBookError::UnknownPreset(_))));
    }

    #[test]
    fn preset_round_trip() {
        for p in PRESETS {
            let ob = OpenBook::preset(p).unwrap();
            let again = OpenBook::new(ob.genus(), &ob.word_string()).unwrap();
            assert_eq!(again, ob);
        }
    }

    #[test]
    fn genus_two_alphabet_forms_a_chain() {
        let s = CombinatorialSurface::new(2).unwrap();
        let a = Alphabet::standard(&s);
        let names: Vec<&str> = a.letters.iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, ["x1", "y1", "x2", "y2", "z1"]);
        let chain = [0usize, 1, 4, 3, 2];
        for i in 0..5 {
            for j in i + 1..5 {
                let n = s.intersection_number(&a.letters[chain[i]].curve, &a.letters[chain[j]].curve);
                assert_eq!(n, usize::from(j == i + 1), "{} {}", names[chain[i]], names[chain[j]]);
            }
        }
    }

    #[test]
    fn parse_errors_and_aliases() {
        let ob = OpenBook::new(2, "xy1Z1").unwrap();
        assert_eq!(ob.word_string(), "x1y1Z1");
        assert_eq!(OpenBook::new(1, "xq"), Err(OpenBookError::UnknownLetter("q".into())));
        assert_eq!(OpenBook::new(1, "x3"), Err(OpenBookError::UnknownLetter("x3".into())));
    }

    #[test]
    fn connect_sum_reindexes() {
        let t = OpenBook::preset("right-trefoil").unwrap();
        let f = OpenBook::preset("figure-eight").unwrap();
        let s = t.boundary_connect_sum(&f).unwrap();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.word_string(), "x1y1x2Y2");
        let std = OpenBook::new(2, "x1y1x2Y2").unwrap();
        for r in 0..4 {
            let a = s.surface.standard_arc(r);
            assert_eq!(s.monodromy(&a).unwrap(), std.monodromy(&a).unwrap());
        }
    }

    #[test]
    fn custom_alphabet_rejects_non_simple_curves() {
        let ok = OpenBook::with_alphabet(1, &[("c".into(), vec![1, 2])], "cC").unwrap();
        assert_eq!(ok.word.len(), 2);
        let bad = OpenBook::with_alphabet(1, &[("c".into(), vec![1, 1])], "c");
        assert!(matches!(bad, Err(OpenBookError::BadCurve(_))));
    }

    #[test]
    fn certificates_on_genus_one() {
        let x_inv = OpenBook::new(1, "X").unwrap();
        let w = x_inv.non_right_veering_certificate(3).unwrap().expect("witness");
        assert_eq!(w.arc, x_inv.surface.standard_arc(0));
        assert!(matches!(w.endpoint, Endpoint::Start | Endpoint::End));
        let rt = OpenBook::preset("right-trefoil").unwrap();
        assert_eq!(rt.non_right_veering_certificate(3).unwrap(), None);
        let id = OpenBook::preset("identity-g1").unwrap();
        assert_eq!(id.non_right_veering_certificate(2).unwrap(), None);
    }
}
