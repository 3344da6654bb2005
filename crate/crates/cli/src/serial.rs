// SPDX-License-Identifier: Apache-2.0

//! Canonical text for elements: `0`, `1`, or `cell | cell | ...` with each
//! cell `lit & lit & ...` and each literal an atom `[rhs ; i:c ... | tail]`,
//! optionally prefixed by `~`. Cells and literals appear in the element's
//! sorted order, so the text is a function of the normal form alone.

use polyadic_core::{Cell, Element, Literal};

use crate::parser::{ParseError, Parser};

pub fn serialize(x: &Element) -> String {
    x.to_string()
}

fn literal(p: &mut Parser<'_>) -> Result<Literal, ParseError> {
    let negated = p.eat("~");
    Ok(Literal::new(p.atom()?, !negated))
}

/// `None` for a cell holding a literal and its negation.
fn cell(p: &mut Parser<'_>) -> Result<Option<Cell>, ParseError> {
    let mut literals = vec![literal(p)?];
    while p.eat("&") {
        literals.push(literal(p)?);
    }
    Ok(Cell::new(literals))
}

pub fn deserialize(text: &str) -> Result<Element, ParseError> {
    let mut p = Parser::new(text);
    let x = if p.eat("0") {
        Element::zero()
    } else if p.eat("1") {
        Element::one()
    } else {
        let mut cells = vec![cell(&mut p)?];
        while p.eat("|") {
            cells.push(cell(&mut p)?);
        }
        Element::from_cells(cells.into_iter().flatten())
    };
    p.finish()?;
    Ok(x)
}
