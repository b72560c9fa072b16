//! The naturality relation between cells, horizontal composition where it
//! is defined, and the commutator cell measuring its obstruction.
//!
//! For x in H(A,B) and z in H(X,A) the relation compares
//! `cod(x)z + x.dom(z)` with `x.cod(z) + dom(x)z`. A structure in which it
//! holds for every composable pair is exactly a 2-category; on such pairs
//! the horizontal composite is the common value.

use crate::cellstruct::{Cell, TwoCellStructure};
use crate::report::{Result, SesqError};

/// Vertical sum of a chain of cells, combined right to left:
/// `eval_chain([a, b, c])` is `a + (b + c)`.
pub fn eval_chain(h: &TwoCellStructure, cells: &[Cell]) -> Result<Cell> {
    let (last, rest) = cells
        .split_last()
        .ok_or_else(|| SesqError::InvalidPresentation("empty cell chain".into()))?;
    let mut acc = last.clone();
    for c in rest.iter().rev() {
        acc = h.vcomp(c, &acc)?;
    }
    Ok(acc)
}

fn check_chain(h: &TwoCellStructure, x: &Cell, z: &Cell) -> Result<()> {
    if z.dst != x.src {
        return Err(SesqError::NotComposableCells(format!(
            "{} after {}: object chain does not line up",
            h.cell_name(x),
            h.cell_name(z)
        )));
    }
    Ok(())
}

/// Is `x` natural with respect to `z`? Both sides of the naturality
/// condition are evaluated with the structure's own tables.
pub fn natural_wrt(h: &TwoCellStructure, x: &Cell, z: &Cell) -> Result<bool> {
    check_chain(h, x, z)?;
    let lhs = h.vcomp(
        &h.lwhisker(h.cod(x)?, z)?,
        &h.rwhisker(x, h.dom(z)?)?,
    )?;
    let rhs = h.vcomp(
        &h.rwhisker(x, h.cod(z)?)?,
        &h.lwhisker(h.dom(x)?, z)?,
    )?;
    Ok(lhs == rhs)
}

/// Is `x` natural with respect to every cell it can meet? Enumerated
/// backends only.
pub fn is_natural(h: &TwoCellStructure, x: &Cell) -> Result<bool> {
    for obj in h.cat.objects() {
        for z in h.cells_between(obj, x.src)? {
            if !natural_wrt(h, x, &z)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First witness against naturality of `x`, if any.
pub fn naturality_counterexample(h: &TwoCellStructure, x: &Cell) -> Result<Option<Cell>> {
    for obj in h.cat.objects() {
        for z in h.cells_between(obj, x.src)? {
            if !natural_wrt(h, x, &z)? {
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}

/// Does the naturality condition hold for every composable cell pair?
/// True exactly when the sesquicategory is a 2-category.
pub fn is_two_category(h: &TwoCellStructure) -> Result<bool> {
    Ok(failing_pairs(h)?.is_empty())
}

/// All composable cell pairs violating the naturality condition.
pub fn failing_pairs(h: &TwoCellStructure) -> Result<Vec<(Cell, Cell)>> {
    let cells = h.all_cells()?;
    let mut out = Vec::new();
    for x in &cells {
        for z in &cells {
            if z.dst != x.src {
                continue;
            }
            if !natural_wrt(h, x, z)? {
                out.push((x.clone(), z.clone()));
            }
        }
    }
    Ok(out)
}

/// Horizontal composite of a natural pair: `cod(x)y + x.dom(y)`. The
/// precondition makes this equal to the other association.
pub fn hcomp(h: &TwoCellStructure, x: &Cell, y: &Cell) -> Result<Cell> {
    if !natural_wrt(h, x, y)? {
        return Err(SesqError::NotNaturalPair(format!(
            "{} with {}",
            h.cell_name(x),
            h.cell_name(y)
        )));
    }
    h.vcomp(
        &h.lwhisker(h.cod(x)?, y)?,
        &h.rwhisker(x, h.dom(y)?)?,
    )
}

/// The commutator `[x,y] = c1 + d2 - d1 - c2` with `c1 = cod(x)y`,
/// `d2 = x.dom(y)`, `d1 = dom(x)y`, `c2 = x.cod(y)`, summed right to
/// left (the unique composable order). Zero exactly when x is natural
/// with respect to y, whenever the inverses exist.
pub fn commutator(h: &TwoCellStructure, x: &Cell, y: &Cell) -> Result<Cell> {
    check_chain(h, x, y)?;
    let c1 = h.lwhisker(h.cod(x)?, y)?;
    let d2 = h.rwhisker(x, h.dom(y)?)?;
    let d1 = h.lwhisker(h.dom(x)?, y)?;
    let c2 = h.rwhisker(x, h.cod(y)?)?;
    let nd1 = h.inverse(&d1)?;
    let nc2 = h.inverse(&c2)?;
    eval_chain(h, &[c1, d2, nd1, nc2])
}
