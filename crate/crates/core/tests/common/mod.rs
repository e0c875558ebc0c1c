#![allow(dead_code)]

use degree_trees::DegreeMultiset;

/// Every sequence of length `1..=max_len` over `0..=max_degree`, passed to `f`.
pub fn for_each_sequence(max_len: usize, max_degree: usize, mut f: impl FnMut(&[usize])) {
    for len in 1..=max_len {
        let mut s = vec![0usize; len];
        loop {
            f(&s);
            // odometer increment
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if s[i] < max_degree {
                    s[i] += 1;
                    break;
                }
                s[i] = 0;
            }
            if s.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
}

/// Every multiset with `1..=max_nodes` nodes and degrees in `0..=max_degree`.
pub fn all_multisets(max_nodes: usize, max_degree: usize) -> Vec<DegreeMultiset> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; max_degree + 1];
    fn rec(d: usize, left: usize, counts: &mut Vec<usize>, out: &mut Vec<DegreeMultiset>) {
        if d == counts.len() {
            if counts.iter().sum::<usize>() > 0 {
                out.push(DegreeMultiset::from_counts(counts.iter().copied().enumerate()).unwrap());
            }
            return;
        }
        for m in 0..=left {
            counts[d] = m;
            rec(d + 1, left - m, counts, out);
        }
        counts[d] = 0;
    }
    rec(0, max_nodes, &mut counts, &mut out);
    out
}

pub fn constructible_multisets(max_nodes: usize, max_degree: usize) -> Vec<DegreeMultiset> {
    all_multisets(max_nodes, max_degree)
        .into_iter()
        .filter(DegreeMultiset::is_constructible)
        .collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Parses the s-expression rendering back into a prefix code.
pub fn parse_sexpr(text: &str) -> Option<Vec<usize>> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let mut code = Vec::new();
    fn node(tokens: &[&str], pos: &mut usize, code: &mut Vec<usize>) -> Option<()> {
        match *tokens.get(*pos)? {
            "0" => {
                *pos += 1;
                code.push(0);
                Some(())
            }
            "(" => {
                *pos += 1;
                let d: usize = tokens.get(*pos)?.parse().ok()?;
                *pos += 1;
                code.push(d);
                for _ in 0..d {
                    node(tokens, pos, code)?;
                }
                (*tokens.get(*pos)? == ")").then(|| *pos += 1)
            }
            _ => None,
        }
    }
    node(&tokens, &mut pos, &mut code)?;
    (pos == tokens.len()).then_some(code)
}
