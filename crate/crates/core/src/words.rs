//! Generator tokens, words over the four alphabets, derived words, and
//! evaluation into `RP_n`.
//!
//! Alphabets:
//! - `ETO`: `e_i`, `t_ij`, `o_i` (generates the singular part as a semigroup)
//! - `SEQO`: `s_i`, `e_i`, `q_i`, `o_i`
//! - `SEQO3`: `s_i` plus bare `e`, `q`, `o` (standing for `e_1`, `q_1`, `o_1`)
//! - `SCEQO`: bare `s`, `c`, `e`, `q`, `o`, where `c = s_1 s_2 ⋯ s_{n-1}`

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{RookPartition, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    S(usize),
    E(usize),
    Q(usize),
    O(usize),
    /// Always stored with the smaller index first.
    T(usize, usize),
    BareS,
    C,
    BareE,
    BareQ,
    BareO,
}

impl Token {
    /// `t_ij` with `i != j`, normalised so the smaller index comes first.
    pub fn t(i: usize, j: usize) -> Token {
        Token::T(i.min(j), i.max(j))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::S(i) => write!(f, "s{i}"),
            Token::E(i) => write!(f, "e{i}"),
            Token::Q(i) => write!(f, "q{i}"),
            Token::O(i) => write!(f, "o{i}"),
            Token::T(i, j) => write!(f, "t{i},{j}"),
            Token::BareS => f.write_str("s"),
            Token::C => f.write_str("c"),
            Token::BareE => f.write_str("e"),
            Token::BareQ => f.write_str("q"),
            Token::BareO => f.write_str("o"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Eto,
    Seqo,
    Seqo3,
    Sceqo,
}

impl Alphabet {
    pub const ALL: [Alphabet; 4] = [Alphabet::Eto, Alphabet::Seqo, Alphabet::Seqo3, Alphabet::Sceqo];

    pub fn admits(self, token: Token) -> bool {
        use Token::*;
        match self {
            Alphabet::Eto => matches!(token, E(_) | T(..) | O(_)),
            Alphabet::Seqo => matches!(token, S(_) | E(_) | Q(_) | O(_)),
            Alphabet::Seqo3 => matches!(token, S(_) | BareE | BareQ | BareO),
            Alphabet::Sceqo => matches!(token, BareS | C | BareE | BareQ | BareO),
        }
    }

    /// The generating letters for degree `n`, in a fixed order.
    pub fn generators(self, n: usize) -> Vec<Token> {
        let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| Token::T(i, j)));
        match self {
            Alphabet::Eto => (1..=n)
                .map(Token::E)
                .chain(pairs)
                .chain((1..=n).map(Token::O))
                .collect(),
            Alphabet::Seqo => (1..n)
                .map(Token::S)
                .chain((1..=n).map(Token::E))
                .chain((1..n).map(Token::Q))
                .chain((1..=n).map(Token::O))
                .collect(),
            Alphabet::Seqo3 => (1..n)
                .map(Token::S)
                .chain([Token::BareE, Token::BareQ, Token::BareO])
                .collect(),
            Alphabet::Sceqo => vec![Token::BareS, Token::C, Token::BareE, Token::BareQ, Token::BareO],
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Eto => "ETO",
            Alphabet::Seqo => "SEQO",
            Alphabet::Seqo3 => "SEQO3",
            Alphabet::Sceqo => "SCEQO",
        })
    }
}

impl FromStr for Alphabet {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Alphabet::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| WordError::UnknownToken(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("token {token} is out of range for degree {degree}")]
    IndexOutOfRange { token: String, degree: usize },
    #[error("unrecognised token `{0}`")]
    UnknownToken(String),
    #[error("token {token} does not belong to alphabet {alphabet}")]
    WrongAlphabet { token: Token, alphabet: Alphabet },
    #[error("no single alphabet contains every token of `{0}`")]
    MixedAlphabet(String),
    #[error("cannot combine words over {0} and {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("only words over the s-letters can be inverted")]
    NotInvertible,
}

/// A finite sequence of tokens over a fixed alphabet; the empty word is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    tokens: Vec<Token>,
}

impl Word {
    pub fn new(alphabet: Alphabet, tokens: Vec<Token>) -> Result<Self, WordError> {
        if let Some(&token) = tokens.iter().find(|&&t| !alphabet.admits(t)) {
            return Err(WordError::WrongAlphabet { token, alphabet });
        }
        Ok(Word { alphabet, tokens })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            tokens: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Ok(Word {
            alphabet: self.alphabet,
            tokens,
        })
    }

    pub fn pow(&self, k: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            tokens: self.tokens.repeat(k),
        }
    }

    /// Reversal, valid as an inverse for words in the involutive letters `s_i`, `s`.
    pub fn inverse(&self) -> Result<Word, WordError> {
        if !self.tokens.iter().all(|t| matches!(t, Token::S(_) | Token::BareS)) {
            return Err(WordError::NotInvertible);
        }
        Ok(Word {
            alphabet: self.alphabet,
            tokens: self.tokens.iter().rev().copied().collect(),
        })
    }

    /// Parses whitespace-separated tokens (and macros) over `alphabet`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word, WordError> {
        Word::new(alphabet, parse_tokens(text)?)
    }

    /// Parses a word, choosing the first alphabet (in `Alphabet::ALL` order)
    /// that admits every token. The empty word is placed over `SEQO`.
    pub fn parse_any(text: &str) -> Result<Word, WordError> {
        let tokens = parse_tokens(text)?;
        if tokens.is_empty() {
            return Ok(Word::empty(Alphabet::Seqo));
        }
        let alphabet = Alphabet::ALL
            .into_iter()
            .find(|a| tokens.iter().all(|&t| a.admits(t)))
            .ok_or_else(|| WordError::MixedAlphabet(text.trim().to_string()))?;
        Ok(Word { alphabet, tokens })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("1");
        }
        for (k, t) in self.tokens.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn split_words(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '{' => {
                depth += 1;
                cur.push(ch);
            }
            '}' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_index(s: &str, raw: &str) -> Result<usize, WordError> {
    s.parse().map_err(|_| WordError::UnknownToken(raw.to_string()))
}

fn parse_pair(s: &str, raw: &str) -> Result<(usize, usize), WordError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| WordError::UnknownToken(raw.to_string()))?;
    Ok((parse_index(a, raw)?, parse_index(b, raw)?))
}

fn parse_set(s: &str, raw: &str) -> Result<Vec<usize>, WordError> {
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| WordError::UnknownToken(raw.to_string()))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|x| parse_index(x, raw)).collect()
}

fn bad_index(raw: &str) -> WordError {
    WordError::IndexOutOfRange {
        token: raw.to_string(),
        degree: 0,
    }
}

/// Expands one textual token (possibly a macro) into generator tokens.
fn expand(raw: &str) -> Result<Vec<Token>, WordError> {
    use Token::*;
    let one = |t: Token| Ok(vec![t]);
    match raw {
        "1" => return Ok(Vec::new()),
        "s" => return one(BareS),
        "c" => return one(C),
        "e" => return one(BareE),
        "q" => return one(BareQ),
        "o" => return one(BareO),
        _ => {}
    }
    let checked = |i: usize| if i == 0 { Err(bad_index(raw)) } else { Ok(i) };
    if let Some(rest) = raw.strip_prefix("tau") {
        let (i, j) = parse_pair(rest, raw)?;
        if i == 0 || j <= i {
            return Err(bad_index(raw));
        }
        return Ok(tau(i, j).tokens);
    }
    if let Some(rest) = raw.strip_prefix("tA") {
        return Ok(t_set(&parse_set(rest, raw)?).tokens);
    }
    if let Some(rest) = raw.strip_prefix("oA") {
        return Ok(o_set(&parse_set(rest, raw)?).tokens);
    }
    if let Some(rest) = raw.strip_prefix("eij") {
        let (i, j) = parse_pair(rest, raw)?;
        if i == 0 || j == 0 || i == j {
            return Err(bad_index(raw));
        }
        return Ok(e_ij(i, j).tokens);
    }
    let (head, rest) = raw.split_at(raw.chars().next().map_or(0, char::len_utf8));
    match head {
        "t" => {
            let (i, j) = parse_pair(rest, raw)?;
            if i == 0 || j == 0 || i == j {
                return Err(bad_index(raw));
            }
            one(Token::t(i, j))
        }
        "s" => one(S(checked(parse_index(rest, raw)?)?)),
        "e" => one(E(checked(parse_index(rest, raw)?)?)),
        "q" => one(Q(checked(parse_index(rest, raw)?)?)),
        "o" => one(O(checked(parse_index(rest, raw)?)?)),
        "E" => Ok(capital_e(checked(parse_index(rest, raw)?)?).tokens),
        "O" => Ok(capital_o(checked(parse_index(rest, raw)?)?).tokens),
        "Q" => Ok(capital_q(checked(parse_index(rest, raw)?)?).tokens),
        _ => Err(WordError::UnknownToken(raw.to_string())),
    }
}

fn parse_tokens(text: &str) -> Result<Vec<Token>, WordError> {
    let mut tokens = Vec::new();
    for raw in split_words(text) {
        tokens.extend(expand(&raw)?);
    }
    Ok(tokens)
}

fn out_of_range(token: Token, n: usize) -> WordError {
    WordError::IndexOutOfRange {
        token: token.to_string(),
        degree: n,
    }
}

/// Whether `token` names a generator in degree `n`.
pub fn token_in_range(token: Token, n: usize) -> bool {
    match token {
        Token::E(i) | Token::O(i) => (1..=n).contains(&i),
        Token::S(i) | Token::Q(i) => i >= 1 && i < n,
        Token::T(i, j) => i >= 1 && i < j && j <= n,
        Token::BareS | Token::BareQ => n >= 2,
        Token::BareE | Token::BareO => n >= 1,
        Token::C => true,
    }
}

fn unit_except(n: usize, skip: &[usize]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (1..=n)
        .filter(move |k| !skip.contains(k))
        .map(|k| vec![Vertex::Upper(k), Vertex::Lower(k)])
}

/// The diagram of a single generator in degree `n`.
pub fn atomic(n: usize, token: Token) -> Result<RookPartition, WordError> {
    if !token_in_range(token, n) {
        return Err(out_of_range(token, n));
    }
    let built = match token {
        Token::E(i) => RookPartition::from_blocks(
            n,
            unit_except(n, &[i]).chain([vec![Vertex::Upper(i)], vec![Vertex::Lower(i)]]),
        ),
        Token::O(i) => RookPartition::from_blocks(n, unit_except(n, &[i])),
        Token::T(i, j) => RookPartition::from_blocks(
            n,
            unit_except(n, &[i, j]).chain([vec![
                Vertex::Upper(i),
                Vertex::Upper(j),
                Vertex::Lower(i),
                Vertex::Lower(j),
            ]]),
        ),
        Token::Q(i) => return atomic(n, Token::T(i, i + 1)),
        Token::S(i) => {
            let mut images: Vec<usize> = (1..=n).collect();
            images.swap(i - 1, i);
            RookPartition::permutation(&images)
        }
        Token::BareS => return atomic(n, Token::S(1)),
        Token::BareE => return atomic(n, Token::E(1)),
        Token::BareQ => return atomic(n, Token::Q(1)),
        Token::BareO => return atomic(n, Token::O(1)),
        Token::C => {
            let mut c = RookPartition::identity(n);
            for i in 1..n {
                c = c.product(&atomic(n, Token::S(i))?);
            }
            return Ok(c);
        }
    };
    Ok(built.expect("generator diagrams are well formed"))
}

/// Evaluates a word left to right, also returning the accumulated twist
/// count (the sum of floating components over the successive products).
pub fn evaluate_with_twist(n: usize, word: &Word) -> Result<(RookPartition, usize), WordError> {
    let mut cache: Vec<(Token, RookPartition)> = Vec::new();
    let mut acc = RookPartition::identity(n);
    let mut twist = 0;
    for &tok in &word.tokens {
        let gen = match cache.iter().find(|(t, _)| *t == tok) {
            Some((_, d)) => d.clone(),
            None => {
                let d = atomic(n, tok)?;
                cache.push((tok, d.clone()));
                d
            }
        };
        let (next, m) = acc.compose_unchecked(&gen);
        acc = next;
        twist += m;
    }
    Ok((acc, twist))
}

/// Evaluates a word in `RP_n`; the empty word gives the identity.
pub fn evaluate(n: usize, word: &Word) -> Result<RookPartition, WordError> {
    evaluate_with_twist(n, word).map(|(d, _)| d)
}

/// Rewrites a word over `ETO` into `SEQO`, sending `t_ij` to `τ_ij`.
pub fn rho(word: &Word) -> Result<Word, WordError> {
    if word.alphabet != Alphabet::Eto {
        return Err(WordError::AlphabetMismatch(word.alphabet, Alphabet::Eto));
    }
    let tokens = word
        .tokens
        .iter()
        .flat_map(|&t| match t {
            Token::T(i, j) => tau(i, j).tokens,
            other => vec![other],
        })
        .collect();
    Ok(Word {
        alphabet: Alphabet::Seqo,
        tokens,
    })
}

fn word(alphabet: Alphabet, tokens: Vec<Token>) -> Word {
    Word { alphabet, tokens }
}

/// `e_ij = e_i t_ij e_j`.
pub fn e_ij(i: usize, j: usize) -> Word {
    word(Alphabet::Eto, vec![Token::E(i), Token::t(i, j), Token::E(j)])
}

/// `t_A = t_{a1 a2} t_{a2 a3} ⋯` for `A` listed in increasing order; empty for `|A| ≤ 1`.
pub fn t_set(set: &[usize]) -> Word {
    let mut a = set.to_vec();
    a.sort_unstable();
    a.dedup();
    word(Alphabet::Eto, a.windows(2).map(|w| Token::t(w[0], w[1])).collect())
}

/// `o_A = o_{a1} ⋯ o_{ak}`.
pub fn o_set(set: &[usize]) -> Word {
    let mut a = set.to_vec();
    a.sort_unstable();
    a.dedup();
    word(Alphabet::Eto, a.into_iter().map(Token::O).collect())
}

/// `σ_ij = s_{i+1} ⋯ s_{j-1}`.
pub fn sigma(i: usize, j: usize) -> Word {
    word(Alphabet::Seqo, (i + 1..j).map(Token::S).collect())
}

/// `τ_ij = σ_ij⁻¹ q_i σ_ij`.
pub fn tau(i: usize, j: usize) -> Word {
    let s = sigma(i, j);
    let mut tokens: Vec<Token> = s.tokens.iter().rev().copied().collect();
    tokens.push(Token::Q(i));
    tokens.extend_from_slice(&s.tokens);
    word(Alphabet::Seqo, tokens)
}

/// `c_i = s_1 ⋯ s_{i-1}`.
pub fn c_word(i: usize) -> Word {
    word(Alphabet::Seqo3, (1..i).map(Token::S).collect())
}

/// `d_j = s_2 ⋯ s_j s_1 ⋯ s_{j-1}`.
pub fn d_word(j: usize) -> Word {
    word(Alphabet::Seqo3, (2..=j).chain(1..j).map(Token::S).collect())
}

fn conjugate(by: &Word, letter: Token) -> Word {
    let mut tokens: Vec<Token> = by.tokens.iter().rev().copied().collect();
    tokens.push(letter);
    tokens.extend_from_slice(&by.tokens);
    word(by.alphabet, tokens)
}

/// `E_i = c_i⁻¹ e c_i`.
pub fn capital_e(i: usize) -> Word {
    conjugate(&c_word(i), Token::BareE)
}

/// `O_i = c_i⁻¹ o c_i`.
pub fn capital_o(i: usize) -> Word {
    conjugate(&c_word(i), Token::BareO)
}

/// `Q_j = d_j⁻¹ q d_j`.
pub fn capital_q(j: usize) -> Word {
    conjugate(&d_word(j), Token::BareQ)
}

/// `S_1 = s` and `S_{i+1} = c^i s c^{n-i}` over `SCEQO`.
pub fn shifted_s(n: usize, i: usize) -> Word {
    if i == 0 {
        return word(Alphabet::Sceqo, vec![Token::BareS]);
    }
    let mut tokens = vec![Token::C; i];
    tokens.push(Token::BareS);
    tokens.extend(std::iter::repeat_n(Token::C, n - i));
    word(Alphabet::Sceqo, tokens)
}

/// Named derived words with their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derived {
    Eij(usize, usize),
    TSet(Vec<usize>),
    OSet(Vec<usize>),
    Sigma(usize, usize),
    Tau(usize, usize),
    C(usize),
    D(usize),
    E(usize),
    O(usize),
    Q(usize),
    /// `S_{i+1}` for the given `i` (`0` gives `S_1 = s`).
    Shift(usize),
}

/// Builds a derived word after checking its parameters against degree `n`.
pub fn derived_word(n: usize, kind: &Derived) -> Result<Word, WordError> {
    let in_points = |i: usize| (1..=n).contains(&i);
    let ok = match kind {
        Derived::Eij(i, j) => in_points(*i) && in_points(*j) && i != j,
        Derived::TSet(a) | Derived::OSet(a) => a.iter().all(|&i| in_points(i)),
        Derived::Sigma(i, j) | Derived::Tau(i, j) => *i >= 1 && i < j && *j <= n,
        Derived::C(i) | Derived::E(i) | Derived::O(i) => in_points(*i),
        Derived::D(j) | Derived::Q(j) => *j >= 1 && *j < n,
        Derived::Shift(i) => n >= 2 && *i + 2 <= n,
    };
    if !ok {
        return Err(WordError::IndexOutOfRange {
            token: format!("{kind:?}"),
            degree: n,
        });
    }
    Ok(match kind {
        Derived::Eij(i, j) => e_ij(*i, *j),
        Derived::TSet(a) => t_set(a),
        Derived::OSet(a) => o_set(a),
        Derived::Sigma(i, j) => sigma(*i, *j),
        Derived::Tau(i, j) => tau(*i, *j),
        Derived::C(i) => c_word(*i),
        Derived::D(j) => d_word(*j),
        Derived::E(i) => capital_e(*i),
        Derived::O(i) => capital_o(*i),
        Derived::Q(j) => capital_q(*j),
        Derived::Shift(i) => shifted_s(n, *i),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> RookPartition {
        s.parse().unwrap()
    }

    fn eval(n: usize, text: &str) -> RookPartition {
        evaluate(n, &Word::parse_any(text).unwrap()).unwrap()
    }

    #[test]
    fn atomic_diagrams() {
        assert_eq!(atomic(2, Token::T(1, 2)).unwrap(), lit("n=2; 1,2,1',2'"));
        assert_eq!(atomic(3, Token::S(1)).unwrap(), lit("n=3; 1,2'; 2,1'; 3,3'"));
        assert_eq!(atomic(2, Token::O(1)).unwrap(), lit("n=2; 2,2'"));
        assert_eq!(atomic(2, Token::E(2)).unwrap(), lit("n=2; 1,1'; 2; 2'"));
        assert_eq!(atomic(3, Token::Q(2)).unwrap(), atomic(3, Token::T(2, 3)).unwrap());
        assert!(matches!(atomic(2, Token::S(2)), Err(WordError::IndexOutOfRange { .. })));
        assert!(atomic(2, Token::T(2, 3)).is_err());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval(3, ""), RookPartition::identity(3));
        assert_eq!(eval(3, "1"), RookPartition::identity(3));
        assert_eq!(eval(2, "e1 t1,2 e2"), lit("n=2; 2,1'; 1; 2'"));
        assert_eq!(eval(2, "o1 e1 o1"), atomic(2, Token::O(1)).unwrap());
        assert_eq!(eval(2, "eij1,2"), eval(2, "e1 t1,2 e2"));
    }

    #[test]
    fn tau_matches_the_drawn_example() {
        let w = tau(4, 8);
        assert_eq!(w.to_string(), "s7 s6 s5 q4 s5 s6 s7");
        assert_eq!(evaluate(10, &w).unwrap(), atomic(10, Token::T(4, 8)).unwrap());
        assert_eq!(tau(1, 2).to_string(), "q1");
    }

    #[test]
    fn set_words() {
        assert!(t_set(&[3]).is_empty());
        assert_eq!(o_set(&[4, 2]).to_string(), "o2 o4");
        assert_eq!(t_set(&[1, 2, 3]).to_string(), "t1,2 t2,3");
        assert_eq!(Word::parse_any("tA{1,3} oA{2}").unwrap().to_string(), "t1,3 o2");
        assert_eq!(
            derived_word(4, &Derived::OSet(vec![2, 4])).unwrap().to_string(),
            "o2 o4"
        );
        assert!(derived_word(3, &Derived::OSet(vec![4])).is_err());
    }

    #[test]
    fn rho_examples() {
        let w = Word::parse(Alphabet::Eto, "t1,2").unwrap();
        assert_eq!(rho(&w).unwrap().to_string(), "q1");
        let w = Word::parse(Alphabet::Eto, "e3").unwrap();
        assert_eq!(rho(&w).unwrap().to_string(), "e3");
        let w = Word::parse(Alphabet::Eto, "o1 t1,3").unwrap();
        let r = rho(&w).unwrap();
        assert_eq!(r.to_string(), "o1 s2 q1 s2");
        assert_eq!(evaluate(3, &r).unwrap(), evaluate(3, &w).unwrap());
    }

    #[test]
    fn capital_letters_agree_with_generators() {
        for n in 1..=6 {
            for i in 1..=n {
                assert_eq!(evaluate(n, &capital_e(i)).unwrap(), atomic(n, Token::E(i)).unwrap());
                assert_eq!(evaluate(n, &capital_o(i)).unwrap(), atomic(n, Token::O(i)).unwrap());
            }
            for j in 1..n {
                assert_eq!(evaluate(n, &capital_q(j)).unwrap(), atomic(n, Token::Q(j)).unwrap());
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(evaluate(n, &tau(i, j)).unwrap(), atomic(n, Token::T(i, j)).unwrap());
                }
            }
        }
    }

    #[test]
    fn shifted_s_agrees_with_adjacent_transpositions() {
        for n in 2..=6 {
            for i in 0..n - 1 {
                let w = shifted_s(n, i);
                assert_eq!(
                    evaluate(n, &w).unwrap(),
                    atomic(n, Token::S(i + 1)).unwrap(),
                    "S_{} at n={n}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn parsing_and_alphabets() {
        assert_eq!(Word::parse_any("s e q o").unwrap().alphabet(), Alphabet::Sceqo);
        assert_eq!(Word::parse_any("s1 e q").unwrap().alphabet(), Alphabet::Seqo3);
        assert_eq!(Word::parse_any("s1 e2").unwrap().alphabet(), Alphabet::Seqo);
        assert_eq!(Word::parse_any("t2,1").unwrap().tokens(), &[Token::T(1, 2)]);
        assert!(matches!(Word::parse_any("s1 t1,2"), Err(WordError::MixedAlphabet(_))));
        assert!(matches!(Word::parse_any("x3"), Err(WordError::UnknownToken(_))));
        assert!(Word::parse(Alphabet::Eto, "s1").is_err());
        assert_eq!(Word::parse_any("E2").unwrap().to_string(), "s1 e s1");
        assert_eq!(Word::parse_any("Q2").unwrap().to_string(), "s1 s2 q s2 s1");
        assert_eq!("scEqO".parse::<Alphabet>().unwrap(), Alphabet::Sceqo);
    }

    #[test]
    fn inverse_and_concat() {
        let w = Word::parse_any("s1 s2 s3").unwrap();
        assert_eq!(w.inverse().unwrap().to_string(), "s3 s2 s1");
        assert!(Word::parse_any("e1").unwrap().inverse().is_err());
        let a = Word::parse_any("e1").unwrap();
        let b = Word::parse_any("o2").unwrap();
        assert_eq!(a.concat(&b).unwrap().to_string(), "e1 o2");
        assert!(a.concat(&w).is_err());
        assert_eq!(Word::empty(Alphabet::Eto).to_string(), "1");
    }

    #[test]
    fn generator_lists() {
        assert_eq!(
            Alphabet::Eto
                .generators(2)
                .iter()
                .map(Token::to_string)
                .collect::<Vec<_>>(),
            ["e1", "e2", "t1,2", "o1", "o2"]
        );
        for n in 1..=6 {
            assert_eq!(Alphabet::Eto.generators(n).len(), (n * n + 3 * n) / 2);
        }
        assert_eq!(Alphabet::Seqo.generators(3).len(), 2 + 3 + 2 + 3);
    }
}
