use std::fmt;

use serde::Serialize;

/// Matrix-block sizes over the complex numbers consistent with the invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Unique(Vec<usize>),
    Candidates(Vec<Vec<usize>>),
    NotSemisimple,
}

impl Shape {
    pub fn from_candidates(mut c: Vec<Vec<usize>>) -> Self {
        if c.len() == 1 {
            Shape::Unique(c.pop().unwrap())
        } else {
            Shape::Candidates(c)
        }
    }
}

fn braces(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Unique(p) => write!(f, "{}", braces(p)),
            Shape::Candidates(c) if c.is_empty() => write!(f, "none"),
            Shape::Candidates(c) => {
                let all: Vec<String> = c.iter().map(|p| braces(p)).collect();
                write!(f, "one of {}", all.join(" "))
            }
            Shape::NotSemisimple => write!(f, "n/a"),
        }
    }
}

/// Non-increasing sequences of `parts` positive integers whose squares sum to `total`.
pub fn square_partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for s in (1..=max).rev() {
            let sq = s * s;
            if sq > total || total - sq < parts - 1 {
                continue;
            }
            prefix.push(s);
            go(total - sq, parts - 1, s, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let max = (1..).take_while(|s| s * s <= total).last().unwrap_or(0);
    go(total, parts, max, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        assert_eq!(square_partitions(8, 5), vec![vec![2, 1, 1, 1, 1]]);
        assert_eq!(square_partitions(4, 1), vec![vec![2]]);
        assert_eq!(square_partitions(8, 2), vec![vec![2, 2]]);
        assert_eq!(square_partitions(10, 2), vec![vec![3, 1]]);
        assert_eq!(square_partitions(50, 2), vec![vec![7, 1], vec![5, 5]]);
        assert!(square_partitions(3, 2).is_empty());
    }
}
