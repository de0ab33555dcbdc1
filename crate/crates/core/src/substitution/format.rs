use super::{Substitution1D, Substitution2D};
use crate::error::{parse_err, Result};
use crate::patterns::{Alphabet, Cell, Dim, Pattern, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnySubstitution {
    One(Substitution1D),
    Two(Substitution2D),
}

/// Parses a substitution file.
///
/// ```text
/// subst 1d 01            subst 2d 3 01
/// 0 -> 000               1 ->
/// 1 -> 101               010
///                        111
///                        010
/// ```
///
/// Blank lines and lines starting with `#` are skipped. 2D image rows are
/// listed top to bottom. Symbols without a rule map to zeros in 2D and
/// are an error in 1D.
pub fn parse_substitution(src: &str) -> Result<AnySubstitution> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty substitution file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    match head.as_slice() {
        ["subst", "1d", spec] => {
            let alphabet = Alphabet::parse(spec).map_err(|e| parse_err(ln, e.to_string()))?;
            let mut rules: Vec<Option<Vec<Symbol>>> = vec![None; alphabet.len()];
            for (ln, line) in lines {
                let (a, img) = split_rule(ln, line, &alphabet)?;
                let img = img.trim();
                let word = img
                    .chars()
                    .map(|c| symbol(ln, &alphabet, c))
                    .collect::<Result<Vec<_>>>()?;
                if rules[a as usize].replace(word).is_some() {
                    return Err(parse_err(ln, "duplicate rule"));
                }
            }
            let rules = rules
                .into_iter()
                .enumerate()
                .map(|(a, r)| {
                    r.ok_or_else(|| {
                        parse_err(ln, format!("no rule for {:?}", alphabet.char_of(a as Symbol).unwrap_or('?')))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Substitution1D::new(alphabet, rules)
                .map(AnySubstitution::One)
                .map_err(|e| parse_err(ln, e.to_string()))
        }
        ["subst", "2d", s, spec] => {
            let e: usize = s
                .parse()
                .map_err(|_| parse_err(ln, format!("bad expansion {s:?}")))?;
            let alphabet = Alphabet::parse(spec).map_err(|e| parse_err(ln, e.to_string()))?;
            let mut images: Vec<Option<Pattern>> = vec![None; alphabet.len()];
            while let Some((ln, line)) = lines.next() {
                let (a, rest) = split_rule(ln, line, &alphabet)?;
                if !rest.trim().is_empty() {
                    return Err(parse_err(ln, "2D image rows go on the following lines"));
                }
                let mut p = Pattern::new(Dim::Two, alphabet.clone());
                for row in 0..e {
                    let (rln, text) = lines
                        .next()
                        .ok_or_else(|| parse_err(ln + row + 1, "missing image row"))?;
                    let chars: Vec<char> = text.chars().collect();
                    if chars.len() != e {
                        return Err(parse_err(rln, format!("expected {e} symbols")));
                    }
                    for (x, &c) in chars.iter().enumerate() {
                        let v = symbol(rln, &alphabet, c)?;
                        p.insert(Cell::new(x as i64, (e - 1 - row) as i64), v)
                            .map_err(|err| parse_err(rln, err.to_string()))?;
                    }
                }
                if images[a as usize].replace(p).is_some() {
                    return Err(parse_err(ln, "duplicate rule"));
                }
            }
            let images: Vec<Pattern> = images
                .into_iter()
                .map(|img| {
                    img.unwrap_or_else(|| {
                        let mut z = Pattern::new(Dim::Two, alphabet.clone());
                        for y in 0..e {
                            for x in 0..e {
                                let _ = z.insert(Cell::new(x as i64, y as i64), 0);
                            }
                        }
                        z
                    })
                })
                .collect();
            Substitution2D::new(alphabet, e, &images)
                .map(AnySubstitution::Two)
                .map_err(|err| parse_err(ln, err.to_string()))
        }
        _ => Err(parse_err(ln, "expected `subst 1d <alphabet>` or `subst 2d <s> <alphabet>`")),
    }
}

fn split_rule<'a>(ln: usize, line: &'a str, alphabet: &Alphabet) -> Result<(Symbol, &'a str)> {
    let (lhs, rhs) = line
        .split_once("->")
        .ok_or_else(|| parse_err(ln, "expected `<symbol> -> <image>`"))?;
    let mut it = lhs.trim().chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok((symbol(ln, alphabet, c)?, rhs)),
        _ => Err(parse_err(ln, "left side must be a single symbol")),
    }
}

fn symbol(ln: usize, alphabet: &Alphabet, c: char) -> Result<Symbol> {
    alphabet
        .symbol_of(c)
        .ok_or_else(|| parse_err(ln, format!("{c:?} not in alphabet")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::canned;

    #[test]
    fn parses_the_canned_files() {
        let one = parse_substitution("subst 1d 01\n0 -> 000\n1 -> 101\n").unwrap();
        assert_eq!(one, AnySubstitution::One(canned::cantor()));
        let two = parse_substitution(
            "# plus\nsubst 2d 3 01\n1 ->\n.1.\n111\n.1.\n",
        )
        .unwrap();
        assert_eq!(two, AnySubstitution::Two(canned::plus()));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_substitution("subst 1d 01\n0 -> 0\n1 -> 2\n").unwrap_err();
        assert!(matches!(err, crate::Error::Parse { line: 3, .. }));
        assert!(parse_substitution("subst 1d 01\n0 -> 0\n").is_err());
        assert!(parse_substitution("subst 2d 2 01\n1 ->\n11\n").is_err());
        assert!(parse_substitution("subst 3d 01\n").is_err());
    }
}
