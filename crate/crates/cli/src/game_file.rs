//! The line-oriented game format.
//!
//! ```text
//! game parity cost
//! vertex a owner=1 color=1
//! edge a b cost=e
//! ```
//!
//! Streett games declare `pairs <d>` after the header, mark vertices with
//! `Q=<c,...>` (requests) and `P=<c,...>` (responses) using pair numbers
//! `1..=d`, and label edges with one `e`/`i` per pair. Text after a `#` that
//! starts a token is a comment.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use costgames::{Arena, Condition, Cost, Edge, Game, ParityColoring, Player, StreettPair, StreettSpec, Variant, VertexSet, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed game file: the game and the variant named in its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameFile {
    pub game: Game,
    pub variant: Variant,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Kind {
    Parity,
    Streett,
}

/// Splits off a comment: `#` only counts at the start of a token so that
/// vertex names may contain it.
pub(crate) fn strip_comment(line: &str) -> &str {
    let mut prev_space = true;
    for (i, ch) in line.char_indices() {
        if ch == '#' && prev_space {
            return &line[..i];
        }
        prev_space = ch.is_whitespace();
    }
    line
}

struct Parser {
    kind: Kind,
    variant: Variant,
    dim: Option<usize>,
    names: Vec<String>,
    owners: Vec<Player>,
    declared_at: Vec<usize>,
    index: HashMap<String, usize>,
    colors: Vec<u32>,
    requests: Vec<Vec<usize>>,
    responses: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    edge_lines: HashMap<(usize, usize), usize>,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn key_value(line: usize, token: &str) -> Result<(&str, &str), ParseError> {
    match token.split_once('=') {
        Some(kv) => Ok(kv),
        None => err(line, format!("expected key=value, found `{token}`")),
    }
}

fn parse_header(line: usize, tokens: &[&str]) -> Result<(Kind, Variant), ParseError> {
    let [directive, kind, variant] = tokens else {
        return err(line, "expected header `game (parity|streett) (classical|cost|bounded-cost)`");
    };
    if *directive != "game" {
        return err(line, format!("expected header `game ...`, found `{directive}`"));
    }
    let kind = match *kind {
        "parity" => Kind::Parity,
        "streett" => Kind::Streett,
        other => return err(line, format!("unknown game kind `{other}`")),
    };
    let variant = variant.parse::<Variant>().or_else(|_| err(line, format!("unknown variant `{variant}`")))?;
    Ok((kind, variant))
}

impl Parser {
    fn dim(&self) -> usize {
        self.dim.unwrap_or(1)
    }

    fn pair_list(&self, line: usize, list: &str) -> Result<Vec<usize>, ParseError> {
        let d = self.dim();
        let mut out = Vec::new();
        for item in list.split(',').filter(|s| !s.is_empty()) {
            match item.parse::<usize>() {
                Ok(c) if (1..=d).contains(&c) => out.push(c - 1),
                _ => return err(line, format!("pair `{item}` is not in 1..={d}")),
            }
        }
        Ok(out)
    }

    fn vertex(&mut self, line: usize, tokens: &[&str]) -> Result<(), ParseError> {
        if self.kind == Kind::Streett && self.dim.is_none() {
            return err(line, "`pairs <d>` must precede the vertices of a Streett game");
        }
        let Some(&name) = tokens.first() else {
            return err(line, "vertex without a name");
        };
        if self.index.contains_key(name) {
            return err(line, format!("duplicate vertex `{name}`"));
        }
        let (mut owner, mut color, mut requests, mut responses) = (None, None, Vec::new(), Vec::new());
        for &token in &tokens[1..] {
            let (key, value) = key_value(line, token)?;
            match (key, self.kind) {
                ("owner", _) => {
                    owner = match value {
                        "0" => Some(Player::Zero),
                        "1" => Some(Player::One),
                        _ => return err(line, format!("owner must be 0 or 1, found `{value}`")),
                    }
                }
                ("color", Kind::Parity) => {
                    color = Some(value.parse::<u32>().or_else(|_| err(line, format!("bad color `{value}`")))?)
                }
                ("Q", Kind::Streett) => requests = self.pair_list(line, value)?,
                ("P", Kind::Streett) => responses = self.pair_list(line, value)?,
                _ => return err(line, format!("unexpected attribute `{key}`")),
            }
        }
        let Some(owner) = owner else {
            return err(line, format!("vertex `{name}` lacks owner=<0|1>"));
        };
        if self.kind == Kind::Parity {
            let Some(color) = color else {
                return err(line, format!("vertex `{name}` lacks color=<nat>"));
            };
            self.colors.push(color);
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.owners.push(owner);
        self.declared_at.push(line);
        self.requests.push(requests);
        self.responses.push(responses);
        Ok(())
    }

    fn edge(&mut self, line: usize, tokens: &[&str]) -> Result<(), ParseError> {
        let (source, target, rest) = match tokens {
            [s, t, rest @ ..] if rest.len() <= 1 => (*s, *t, rest),
            _ => return err(line, "expected `edge <src> <dst> cost=<labels>`"),
        };
        let lookup = |name: &str| match self.index.get(name) {
            Some(&v) => Ok(v),
            None => err(line, format!("dangling edge: unknown vertex `{name}`")),
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        let d = self.dim();
        let costs = match rest.first() {
            Some(token) => {
                let (key, value) = key_value(line, token)?;
                if key != "cost" {
                    return err(line, format!("unexpected attribute `{key}`"));
                }
                if value.chars().count() != d {
                    return err(line, format!("wrong cost length: `{value}` has {} labels, expected {d}", value.chars().count()));
                }
                value
                    .chars()
                    .map(|c| match c {
                        'e' => Ok(Cost::Epsilon),
                        'i' => Ok(Cost::Increment),
                        _ => err(line, format!("cost label `{c}` is neither e nor i")),
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
            None if self.variant == Variant::Classical => vec![Cost::Epsilon; d],
            None => return err(line, "cost=<labels> is required outside the classical variant"),
        };
        if let Some(first) = self.edge_lines.insert((s, t), line) {
            return err(line, format!("edge `{source}` -> `{target}` already declared on line {first}"));
        }
        self.edges.push(Edge { source: s, target: t, costs });
        Ok(())
    }

    fn finish(self, last_line: usize) -> Result<GameFile, ParseError> {
        let n = self.names.len();
        let dim = self.dim();
        if n == 0 {
            return err(last_line, "the game declares no vertex");
        }
        let arena = Arena::unchecked(self.names, self.owners, self.edges, dim);
        if let Some(v) = arena.violations().into_iter().next() {
            let line = match &v {
                Violation::NoSuccessor(name) | Violation::DuplicateVertex(name) => {
                    arena.vertex(name).map_or(last_line, |i| self.declared_at[i])
                }
                _ => last_line,
            };
            return err(line, v.to_string());
        }
        let condition = match self.kind {
            Kind::Parity => Condition::Parity(ParityColoring::new(self.colors)),
            Kind::Streett => {
                let pairs = (0..dim)
                    .map(|c| StreettPair {
                        requests: VertexSet::from_fn(n, |v| self.requests[v].contains(&c)),
                        responses: VertexSet::from_fn(n, |v| self.responses[v].contains(&c)),
                    })
                    .collect();
                Condition::Streett(StreettSpec::new(pairs))
            }
        };
        let game = Game::new(arena, condition).or_else(|e| err(last_line, e.to_string()))?;
        Ok(GameFile { game, variant: self.variant })
    }
}

pub fn parse_game(text: &str) -> Result<GameFile, ParseError> {
    let mut parser: Option<Parser> = None;
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else { continue };
        let Some(p) = parser.as_mut() else {
            let (kind, variant) = parse_header(line, &tokens)?;
            parser = Some(Parser {
                kind,
                variant,
                dim: None,
                names: Vec::new(),
                owners: Vec::new(),
                declared_at: Vec::new(),
                index: HashMap::new(),
                colors: Vec::new(),
                requests: Vec::new(),
                responses: Vec::new(),
                edges: Vec::new(),
                edge_lines: HashMap::new(),
            });
            continue;
        };
        match directive {
            "vertex" => p.vertex(line, args)?,
            "edge" => p.edge(line, args)?,
            "pairs" if p.kind == Kind::Streett => {
                if p.dim.is_some() {
                    return err(line, "pairs declared twice");
                }
                match args {
                    [d] => match d.parse::<usize>() {
                        Ok(d) if d >= 1 => p.dim = Some(d),
                        _ => return err(line, format!("pair count must be a positive integer, found `{d}`")),
                    },
                    _ => return err(line, "expected `pairs <d>`"),
                }
            }
            "game" => return err(line, "header repeated"),
            other => return err(line, format!("unknown directive `{other}`")),
        }
    }
    match parser {
        Some(p) => p.finish(last_line),
        None => err(1, "missing header `game (parity|streett) (classical|cost|bounded-cost)`"),
    }
}

fn pair_list(spec: &StreettSpec, v: usize, pick: impl Fn(&StreettPair) -> &VertexSet) -> String {
    let items: Vec<String> = spec
        .pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| pick(p).contains(v))
        .map(|(c, _)| (c + 1).to_string())
        .collect();
    items.join(",")
}

pub fn cost_labels(edge: &Edge) -> String {
    edge.costs.iter().map(|c| if *c == Cost::Increment { 'i' } else { 'e' }).collect()
}

/// Canonical text of `game` with `variant` in the header.
pub fn serialize_game(game: &Game, variant: Variant) -> String {
    let arena = &game.arena;
    let mut out = String::new();
    let kind = match game.condition {
        Condition::Parity(_) => "parity",
        Condition::Streett(_) => "streett",
    };
    let _ = writeln!(out, "game {kind} {variant}");
    if let Condition::Streett(spec) = &game.condition {
        let _ = writeln!(out, "pairs {}", spec.pair_count());
    }
    for v in arena.vertices() {
        let _ = write!(out, "vertex {} owner={}", arena.name(v), arena.owner(v).index());
        match &game.condition {
            Condition::Parity(coloring) => {
                let _ = write!(out, " color={}", coloring.color(v));
            }
            Condition::Streett(spec) => {
                let q = pair_list(spec, v, |p| &p.requests);
                let p = pair_list(spec, v, |p| &p.responses);
                if !q.is_empty() {
                    let _ = write!(out, " Q={q}");
                }
                if !p.is_empty() {
                    let _ = write!(out, " P={p}");
                }
            }
        }
        out.push('\n');
    }
    for e in arena.edges() {
        let _ = writeln!(out, "edge {} {} cost={}", arena.name(e.source), arena.name(e.target), cost_labels(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use costgames::verify::fixtures::{running_example, lower_bound_streett_game};

    const EXAMPLE: &str = "\
# the running example
game parity cost
vertex a owner=1 color=1
vertex b owner=1 color=0
vertex c owner=1 color=2
vertex d owner=1 color=1
vertex e owner=1 color=0
vertex f owner=1 color=1
vertex g owner=1 color=0
edge a b cost=e
edge b b cost=i
edge b c cost=e
edge c a cost=e
edge c d cost=e
edge d e cost=e
edge e e cost=i   # waiting at e costs
edge e f cost=e
edge f g cost=e
edge g g cost=i
";

    #[test]
    fn example_parses_to_the_fixture() {
        let file = parse_game(EXAMPLE).unwrap();
        assert_eq!(file.game, running_example());
        assert_eq!(file.variant, Variant::Cost);
    }

    #[test]
    fn round_trip_is_canonical() {
        let once = serialize_game(&parse_game(EXAMPLE).unwrap().game, Variant::Cost);
        let again = parse_game(&once).unwrap();
        assert_eq!(again.game, running_example());
        assert_eq!(serialize_game(&again.game, again.variant), once);

        let sgd = lower_bound_streett_game(2);
        let text = serialize_game(&sgd, Variant::BoundedCost);
        assert_eq!(parse_game(&text).unwrap().game, sgd);
    }

    fn error_line(text: &str) -> (usize, String) {
        let e = parse_game(text).unwrap_err();
        (e.line, e.message)
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(error_line("").0, 1);
        assert_eq!(error_line("\n\nvertex a owner=0 color=0").0, 3);
        let cases = [
            ("game parity cost\nvertex a owner=0 color=0\nloop a\n", 3, "unknown directive"),
            ("game parity cost\nvertex a owner=0 color=0\nvertex a owner=1 color=0\n", 3, "duplicate vertex"),
            ("game parity cost\nvertex a owner=0 color=0\nedge a b cost=e\n", 3, "dangling edge"),
            ("game parity cost\nvertex a owner=0 color=0\nedge a a cost=ee\n", 3, "wrong cost length"),
            ("game streett cost\npairs 2\nvertex a owner=0 Q=1\nedge a a cost=i\n", 4, "wrong cost length"),
            ("game parity cost\nvertex a owner=0 color=0\nedge a a\n", 3, "required"),
            ("game parity cost\nvertex a owner=0 color=0\nvertex b owner=0 color=0\nedge a a cost=e\n", 3, "no outgoing"),
            ("game streett cost\nvertex a owner=0\n", 2, "pairs"),
            ("game streett cost\npairs 1\nvertex a owner=0 Q=2\n", 3, "not in 1..=1"),
            ("game parity lazy\n", 1, "unknown variant"),
        ];
        for (text, line, needle) in cases {
            let (got, message) = error_line(text);
            assert_eq!(got, line, "{text}");
            assert!(message.contains(needle), "{message}");
        }
    }

    #[test]
    fn classical_edges_default_to_epsilon() {
        let file = parse_game("game streett classical\npairs 2\nvertex a owner=1 Q=1 P=2\nedge a a\n").unwrap();
        assert!(file.game.arena.edge(0).is_all_epsilon());
        assert_eq!(file.game.arena.cost_dimension(), 2);
    }

    #[test]
    fn hash_inside_a_name_is_not_a_comment() {
        let file = parse_game("game parity classical\nvertex x#1 owner=0 color=0 # trailing\nedge x#1 x#1\n").unwrap();
        assert_eq!(file.game.arena.name(0), "x#1");
    }
}
