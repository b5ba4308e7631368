//! Text grammar for rankings.
//!
//! ```text
//! ranking := tier ('>' tier)*
//! tier    := item | '(' item (',' item)+ ')'
//! item    := [A-Za-z0-9_.-]+
//! ```
//!
//! Whitespace between tokens is arbitrary; the leftmost tier is the top;
//! empty input is the empty ranking. `a > (b, c) > d` puts `a` first, `b` and
//! `c` tied, `d` last.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ranking::{Item, PartialRanking};

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn is_item_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

struct Parser<'a> {
    input: &'a [char],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_whitespace(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_whitespace();
        self.input.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(syntax(self.pos, format!("expected {c:?}, found {found:?}"))),
            None => Err(syntax(self.pos, format!("expected {c:?}, found end of input"))),
        }
    }

    fn item(&mut self) -> Result<Item> {
        self.skip_whitespace();
        let start = self.pos;
        while self.pos < self.input.len() && is_item_char(self.input[self.pos]) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.input.get(self.pos) {
                Some(c) => syntax(start, format!("expected an item, found {c:?}")),
                None => syntax(start, "expected an item, found end of input"),
            });
        }
        let id: String = self.input[start..self.pos].iter().collect();
        Item::new(id)
    }

    fn tier(&mut self) -> Result<BTreeSet<Item>> {
        if self.peek() == Some('(') {
            self.expect('(')?;
            let mut items = BTreeSet::new();
            self.insert_item(&mut items)?;
            self.expect(',')?;
            self.insert_item(&mut items)?;
            while self.peek() == Some(',') {
                self.expect(',')?;
                self.insert_item(&mut items)?;
            }
            self.expect(')')?;
            Ok(items)
        } else {
            let mut items = BTreeSet::new();
            self.insert_item(&mut items)?;
            Ok(items)
        }
    }

    fn insert_item(&mut self, tier: &mut BTreeSet<Item>) -> Result<()> {
        let item = self.item()?;
        if !tier.insert(item.clone()) {
            return Err(Error::DuplicateItem {
                id: item.id().to_string(),
            });
        }
        Ok(())
    }
}

/// Parse the ranking grammar. Duplicate items anywhere in the ranking are
/// rejected; syntax errors carry the character position.
pub fn parse_ranking(text: &str) -> Result<PartialRanking> {
    let chars: Vec<char> = text.chars().collect();
    let mut parser = Parser {
        input: &chars,
        pos: 0,
    };
    if parser.peek().is_none() {
        return Ok(PartialRanking::empty());
    }
    let mut tiers = vec![parser.tier()?];
    while parser.peek() == Some('>') {
        parser.expect('>')?;
        tiers.push(parser.tier()?);
    }
    if let Some(c) = parser.peek() {
        return Err(syntax(parser.pos, format!("unexpected {c:?}")));
    }
    PartialRanking::new(tiers)
}

/// Canonical text form: single spaces around `>`, tier items sorted by id,
/// parentheses only around multi-item tiers. Inverse of [`parse_ranking`].
pub fn format_ranking(r: &PartialRanking) -> String {
    r.tiers()
        .iter()
        .map(|tier| {
            let ids: Vec<&str> = tier.iter().map(Item::id).collect();
            if ids.len() == 1 {
                ids[0].to_string()
            } else {
                format!("({})", ids.join(", "))
            }
        })
        .collect::<Vec<_>>()
        .join(" > ")
}
