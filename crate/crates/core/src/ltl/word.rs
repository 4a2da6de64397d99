//! Letters over a finite set of atomic propositions and ultimately periodic
//! (lasso) words `prefix · period^ω`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

/// A set of atomic propositions, encoded as a bitmask over an ordered AP list
/// that is held by the enclosing word or automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter(pub u32);

/// Largest supported AP universe; letters are enumerated explicitly.
pub const MAX_APS: usize = 16;

impl Letter {
    pub fn contains(self, ap_index: usize) -> bool {
        self.0 >> ap_index & 1 == 1
    }

    pub fn with(self, ap_index: usize) -> Letter {
        Letter(self.0 | 1 << ap_index)
    }

    /// Every letter over `ap_count` propositions, in numeric order.
    pub fn all(ap_count: usize) -> impl Iterator<Item = Letter> {
        assert!(ap_count <= MAX_APS, "at most {MAX_APS} atomic propositions are supported");
        (0..1u32 << ap_count).map(Letter)
    }

    /// Re-encodes a letter from one AP universe into another; `map[i]` is the
    /// index in the target universe of source proposition `i`, or `None` when
    /// the proposition is dropped.
    pub fn project(self, map: &[Option<usize>]) -> Letter {
        let mut out = Letter::default();
        for (i, target) in map.iter().enumerate() {
            if let (true, Some(t)) = (self.contains(i), target) {
                out = out.with(*t);
            }
        }
        out
    }

    pub fn display<'a>(self, aps: &'a [String]) -> LetterDisplay<'a> {
        LetterDisplay { letter: self, aps }
    }
}

pub struct LetterDisplay<'a> {
    letter: Letter,
    aps: &'a [String],
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> =
            self.aps.iter().enumerate().filter(|(i, _)| self.letter.contains(*i)).map(|(_, a)| a.as_str()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("atomic proposition {0:?} is not in the word's alphabet")]
    AlphabetMismatch(String),
    #[error("malformed lasso word: {0}")]
    Malformed(String),
}

/// The word `prefix · period^ω` over the letters of `aps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoWord {
    pub aps: Vec<String>,
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl LassoWord {
    pub fn new(aps: Vec<String>, prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::Malformed("period must be nonempty".into()));
        }
        if aps.len() > MAX_APS {
            return Err(WordError::Malformed(format!("more than {MAX_APS} atomic propositions")));
        }
        Ok(LassoWord { aps, prefix, period })
    }

    /// Number of distinct positions `|prefix| + |period|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at a wrapped position in `0..len()`.
    pub fn letter(&self, pos: usize) -> Letter {
        if pos < self.prefix.len() {
            self.prefix[pos]
        } else {
            self.period[pos - self.prefix.len()]
        }
    }

    /// Successor of a wrapped position; the last period position loops back.
    pub fn succ(&self, pos: usize) -> usize {
        if pos + 1 < self.len() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }

    /// Letter at an absolute (unbounded) position.
    pub fn letter_at(&self, abs: usize) -> Letter {
        if abs < self.prefix.len() {
            self.prefix[abs]
        } else {
            self.period[(abs - self.prefix.len()) % self.period.len()]
        }
    }

    /// For each proposition of `target`, its index in this word's alphabet.
    pub fn ap_map(&self, target: &[String]) -> Result<Vec<usize>, WordError> {
        target
            .iter()
            .map(|a| self.aps.iter().position(|b| b == a).ok_or_else(|| WordError::AlphabetMismatch(a.clone())))
            .collect()
    }

    /// The same word with letters re-encoded over `target`, dropping
    /// propositions not in `target`.
    pub fn restrict(&self, target: &[String]) -> Result<LassoWord, WordError> {
        let forward = self.ap_map(target)?;
        let mut map = vec![None; self.aps.len()];
        for (t, s) in forward.iter().enumerate() {
            map[*s] = Some(t);
        }
        let proj = |v: &[Letter]| v.iter().map(|l| l.project(&map)).collect();
        Ok(LassoWord { aps: target.to_vec(), prefix: proj(&self.prefix), period: proj(&self.period) })
    }

    /// Equivalent representation with the period repeated `k` times.
    pub fn unroll_period(&self, k: usize) -> LassoWord {
        let period = self.period.iter().copied().cycle().take(self.period.len() * k.max(1)).collect();
        LassoWord { aps: self.aps.clone(), prefix: self.prefix.clone(), period }
    }

    /// Parses `prefix;period`, each a comma-separated list of `{a,b}` letters.
    pub fn parse(text: &str, aps: &[String]) -> Result<Self, WordError> {
        let (pre, per) = text.split_once(';').ok_or_else(|| WordError::Malformed("expected `prefix;period`".into()))?;
        let parse_list = |s: &str| -> Result<Vec<Letter>, WordError> {
            let s = s.trim();
            let mut out = Vec::new();
            let mut rest = s;
            while !rest.is_empty() {
                let rest_t = rest.trim_start_matches([',', ' ']);
                if rest_t.is_empty() {
                    break;
                }
                if !rest_t.starts_with('{') {
                    return Err(WordError::Malformed(format!("expected '{{' in {s:?}")));
                }
                let close =
                    rest_t.find('}').ok_or_else(|| WordError::Malformed(format!("unclosed letter in {s:?}")))?;
                let mut letter = Letter::default();
                for name in rest_t[1..close].split(',').map(str::trim).filter(|n| !n.is_empty()) {
                    let i = aps
                        .iter()
                        .position(|a| a == name)
                        .ok_or_else(|| WordError::AlphabetMismatch(name.to_string()))?;
                    letter = letter.with(i);
                }
                out.push(letter);
                rest = &rest_t[close + 1..];
            }
            Ok(out)
        };
        LassoWord::new(aps.to_vec(), parse_list(pre)?, parse_list(per)?)
    }

    /// Random word: prefix length 0..=3, period length 1..=4, uniform letters.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, aps: &[String]) -> LassoWord {
        let n = rng.gen_range(0..=3);
        let p = rng.gen_range(1..=4);
        let letters = 1u32 << aps.len();
        let mut draw = |k| (0..k).map(|_| Letter(rng.gen_range(0..letters))).collect::<Vec<_>>();
        let prefix = draw(n);
        let period = draw(p);
        LassoWord { aps: aps.to_vec(), prefix, period }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Letter]| v.iter().map(|l| l.display(&self.aps).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", list(&self.prefix), list(&self.period))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn aps(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        let ab = aps(&["a", "b"]);
        let w = LassoWord::parse("{a},{a,b};{}", &ab).unwrap();
        assert_eq!(w.prefix, vec![Letter(1), Letter(3)]);
        assert_eq!(w.period, vec![Letter(0)]);
        assert_eq!(w.to_string(), "{a},{a,b};{}");
        assert_eq!(LassoWord::parse(&w.to_string(), &ab).unwrap(), w);
    }

    #[test]
    fn empty_prefix_and_errors() {
        let a = aps(&["a"]);
        let w = LassoWord::parse(";{},{},{a}", &a).unwrap();
        assert!(w.prefix.is_empty());
        assert_eq!(w.period.len(), 3);
        assert!(matches!(LassoWord::parse("{a};", &a), Err(WordError::Malformed(_))));
        assert!(matches!(LassoWord::parse(";{c}", &a), Err(WordError::AlphabetMismatch(_))));
        assert!(LassoWord::parse("{a}", &a).is_err());
    }

    #[test]
    fn positions_wrap_into_period() {
        let w = LassoWord::parse("{a};{},{a}", &aps(&["a"])).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.succ(0), 1);
        assert_eq!(w.succ(2), 1);
        assert_eq!(w.letter_at(5), w.letter(1));
        assert_eq!(w.letter_at(6), w.letter(2));
    }

    #[test]
    fn restrict_reorders_and_drops() {
        let w = LassoWord::parse(";{a,c},{b}", &aps(&["a", "b", "c"])).unwrap();
        let r = w.restrict(&aps(&["c", "b"])).unwrap();
        assert_eq!(r.period, vec![Letter(1), Letter(2)]);
        assert!(w.restrict(&aps(&["z"])).is_err());
    }

    #[test]
    fn random_words_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ab = aps(&["a", "b"]);
        for _ in 0..200 {
            let w = LassoWord::random(&mut rng, &ab);
            assert!(w.prefix.len() <= 3);
            assert!((1..=4).contains(&w.period.len()));
            assert!(w.prefix.iter().chain(&w.period).all(|l| l.0 < 4));
        }
    }
}
