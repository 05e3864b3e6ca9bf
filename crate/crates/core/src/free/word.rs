use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::X, Letter::Y];

    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A monomial of the free algebra on `{x, y}`; the empty word is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Parses a string of `x` and `y` characters; `"1"` and `""` give the empty word.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "1" {
            return Some(Word::one());
        }
        s.chars()
            .map(|c| match c {
                'x' => Some(Letter::X),
                'y' => Some(Letter::Y),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn append(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Splits off the last letter.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), last))
    }

    pub fn weighted_degree(&self, g: &WeightedGrading) -> u32 {
        self.0.iter().map(|&l| g.weight(l)).sum()
    }

    /// Position in the shortlex enumeration, starting from 0 for the empty word.
    pub fn shortlex_index(&self) -> u64 {
        let mut index = (1u64 << self.len()) - 1;
        for (i, &l) in self.0.iter().rev().enumerate() {
            if l == Letter::Y {
                index += 1 << i;
            }
        }
        index
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

pub fn shortlex_compare(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

/// The first `count` words in shortlex order.
pub fn shortlex_enumerate(count: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(count);
    let mut len = 0;
    while out.len() < count {
        for code in 0u64..(1 << len) {
            if out.len() == count {
                break;
            }
            let letters = (0..len)
                .rev()
                .map(|bit| if code >> bit & 1 == 1 { Letter::Y } else { Letter::X })
                .collect();
            out.push(Word(letters));
        }
        len += 1;
    }
    out
}

/// All words of length exactly `len`, in shortlex order.
pub fn words_of_length(len: usize) -> Vec<Word> {
    let start = (1usize << len) - 1;
    shortlex_enumerate(start + (1 << len)).split_off(start)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGrading {
    pub weight_x: u32,
    pub weight_y: u32,
}

impl WeightedGrading {
    pub fn new(weight_x: u32, weight_y: u32) -> Option<Self> {
        (weight_x >= 1 && weight_y >= 1).then_some(WeightedGrading { weight_x, weight_y })
    }

    pub fn standard() -> Self {
        WeightedGrading { weight_x: 1, weight_y: 1 }
    }

    pub fn weight(&self, l: Letter) -> u32 {
        match l {
            Letter::X => self.weight_x,
            Letter::Y => self.weight_y,
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.weight_x.max(self.weight_y)
    }
}

pub fn weighted_degree(w: &Word, g: &WeightedGrading) -> u32 {
    w.weighted_degree(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(shortlex_compare(&w("x"), &w("y")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("y"), &w("xx")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("xy"), &w("yx")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("1"), &w("x")), Ordering::Less);
    }

    #[test]
    fn enumerate_examples() {
        let names = |ws: Vec<Word>| ws.iter().map(ToString::to_string).collect::<Vec<_>>();
        assert_eq!(names(shortlex_enumerate(3)), ["1", "x", "y"]);
        assert_eq!(names(shortlex_enumerate(7)), ["1", "x", "y", "xx", "xy", "yx", "yy"]);
        assert_eq!(shortlex_enumerate(8)[7], w("xxx"));
        assert_eq!(names(words_of_length(2)), ["xx", "xy", "yx", "yy"]);
    }

    #[test]
    fn index_matches_enumeration() {
        for (i, word) in shortlex_enumerate(100).iter().enumerate() {
            assert_eq!(word.shortlex_index(), i as u64);
        }
    }

    #[test]
    fn degree_examples() {
        let g = WeightedGrading::new(1, 10).unwrap();
        assert_eq!(weighted_degree(&w("xxxy"), &g), 13);
        assert_eq!(weighted_degree(&w("1"), &g), 0);
        assert_eq!(weighted_degree(&w("yy"), &g), 20);
        assert!(WeightedGrading::new(0, 1).is_none());
    }
}
