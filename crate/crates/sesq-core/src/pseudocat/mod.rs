//! Pseudocategory data and coherence checking.
//!
//! Internal-category data in a finite category consists of an object of
//! objects `C0`, an object of morphisms `C1`, boundaries `d, c: C1 -> C0`,
//! a unit section `e: C0 -> C1`, and a multiplication `m` defined on the
//! pullback of `(d, c)`.  A pseudocategory relaxes associativity and the
//! unit laws of `m` up to invertible 2-cells: an associator `alpha` and
//! unit correctors `lambda`, `rho`.  Strict internal categories are the
//! special case where all three cells are zero.
//!
//! [`assemble`] derives the pullback scaffolding from `(d, c, e, m)`,
//! attaches the three cells, and validates the structural invariants.
//! [`check_pseudocategory`] then verifies the coherence equations in one of
//! two modes: [`CheckMode::Natural`] checks the pentagon, the middle unit
//! triangle, and naturality of the three cells, while
//! [`CheckMode::NonNatural`] checks the pentagon, all three unit triangles
//! in determination form, and the four naturality facts the unit cells owe
//! each other.
//!
//! [`group::build_group_pseudocategory`] and
//! [`additive::build_additive_pseudocategory`] construct ready-made
//! instances over group and chain-complex carriers.

use crate::cartesian::product_cell;
use crate::cellstruct::{Cell, TwoCellStructure};
use crate::fincat::{FiniteCategory, MorId, ObjId, PullbackSquare};
use crate::naturality::{eval_chain, natural_wrt, naturality_counterexample};
use crate::report::{Result, SesqError, ValidationReport};

pub mod additive;
pub mod group;

/// Which iterated pullback presents the object of composable quadruples.
///
/// Both choices admit the same four legs onto `C1`; coherence verdicts do
/// not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Association {
    /// Quadruples as (triple, morphism) pairs.
    LeftNested,
    /// Quadruples as (morphism, triple) pairs.
    RightNested,
}

/// Which coherence axiom set [`check_pseudocategory`] verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Pentagon, middle unit triangle, naturality of the three cells.
    Natural,
    /// Pentagon, all unit triangles in determination form, and the four
    /// naturality facts between the unit cells.  Does not require the
    /// cells to be natural against anything else.
    NonNatural,
}

/// Pullbacks and comparison maps derived from internal-category data.
///
/// `sq2`, `sq3`, `sq4` present composable pairs, triples, and quadruples.
/// The remaining morphisms are the mediators used by the coherence
/// equations; all of them are pairings into `sq2` or `sq3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMaps {
    pub c0: ObjId,
    pub c1: ObjId,
    /// Pullback of `(d, c)`: pairs `(x, y)` with `d x = c y`, `x` outer.
    pub sq2: PullbackSquare,
    /// Pullback of `(sq2.p2, sq2.p1)`: composable triples.
    pub sq3: PullbackSquare,
    /// Composable quadruples, nested per [`Association`].
    pub sq4: PullbackSquare,
    /// Projections of a quadruple onto its four factors, outermost first.
    pub legs: [MorId; 4],
    /// `x -> (x, 1)`.
    pub e1: MorId,
    /// `x -> (1, x)`.
    pub e2: MorId,
    /// `(x, y, z) -> (x, m(y, z))`.
    pub m1: MorId,
    /// `(x, y, z) -> (m(x, y), z)`.
    pub m2: MorId,
    /// `(x, y) -> (x, 1, y)`.
    pub i0: MorId,
    /// `(x, y) -> (x, y, 1)`.
    pub i1: MorId,
    /// `(x, y) -> (1, x, y)`.
    pub i2: MorId,
}

/// Internal-category data with coherence cells, ready for checking.
#[derive(Debug, Clone)]
pub struct PseudocategoryData {
    pub d: MorId,
    pub c: MorId,
    pub e: MorId,
    pub m: MorId,
    pub association: Association,
    pub maps: InducedMaps,
    /// Associator, a cell from `m . m1` to `m . m2` over the triple object.
    pub alpha: Cell,
    /// Left unit corrector, from `m . e2` to the identity of `C1`.
    pub lambda: Cell,
    /// Right unit corrector, from `m . e1` to the identity of `C1`.
    pub rho: Cell,
}

/// Computes the pullbacks and comparison maps induced by `(d, c, e, m)`.
///
/// `d` and `c` must be parallel, `e` must go the other way between their
/// endpoints, and `m` must be defined on the apex of the pullback of
/// `(d, c)`.  The base category must supply the three pullbacks; every
/// comparison map is a mediator whose cospan commutes by construction.
pub fn induced_maps(
    cat: &FiniteCategory,
    association: Association,
    d: MorId,
    c: MorId,
    e: MorId,
    m: MorId,
) -> Result<InducedMaps> {
    let c1 = cat.dom(d);
    let c0 = cat.cod(d);
    if cat.dom(c) != c1 || cat.cod(c) != c0 {
        return Err(SesqError::TypeMismatch(format!(
            "boundary maps {} and {} are not parallel",
            cat.morphism_name(d),
            cat.morphism_name(c)
        )));
    }
    if cat.dom(e) != c0 || cat.cod(e) != c1 {
        return Err(SesqError::TypeMismatch(format!(
            "unit map {} does not go from {} to {}",
            cat.morphism_name(e),
            cat.object_name(c0),
            cat.object_name(c1)
        )));
    }
    let sq2 = cat.pullback(d, c)?;
    if cat.dom(m) != sq2.apex || cat.cod(m) != c1 {
        return Err(SesqError::TypeMismatch(format!(
            "multiplication {} is not defined on the composable-pairs object",
            cat.morphism_name(m)
        )));
    }
    let sq3 = cat.pullback(sq2.p2, sq2.p1)?;
    let (sq4, legs) = match association {
        Association::LeftNested => {
            let outer = cat.compose_chain(&[d, sq2.p2, sq3.p2])?;
            let sq4 = cat.pullback(outer, c)?;
            let k1 = cat.compose_chain(&[sq2.p1, sq3.p1, sq4.p1])?;
            let k2 = cat.compose_chain(&[sq2.p2, sq3.p1, sq4.p1])?;
            let k3 = cat.compose_chain(&[sq2.p2, sq3.p2, sq4.p1])?;
            (sq4, [k1, k2, k3, sq4.p2])
        }
        Association::RightNested => {
            let outer = cat.compose_chain(&[c, sq2.p1, sq3.p1])?;
            let sq4 = cat.pullback(d, outer)?;
            let k2 = cat.compose_chain(&[sq2.p1, sq3.p1, sq4.p2])?;
            let k3 = cat.compose_chain(&[sq2.p2, sq3.p1, sq4.p2])?;
            let k4 = cat.compose_chain(&[sq2.p2, sq3.p2, sq4.p2])?;
            (sq4, [sq4.p1, k2, k3, k4])
        }
    };
    let id1 = cat.identity(c1)?;
    let id2 = cat.identity(sq2.apex)?;
    let e1 = cat.pair_into(&sq2, id1, cat.compose(e, d)?)?;
    let e2 = cat.pair_into(&sq2, cat.compose(e, c)?, id1)?;
    let m1 = cat.pair_into(
        &sq2,
        cat.compose(sq2.p1, sq3.p1)?,
        cat.compose(m, sq3.p2)?,
    )?;
    let m2 = cat.pair_into(
        &sq2,
        cat.compose(m, sq3.p1)?,
        cat.compose(sq2.p2, sq3.p2)?,
    )?;
    let i0 = cat.pair_into(
        &sq3,
        cat.compose(e1, sq2.p1)?,
        cat.compose(e2, sq2.p2)?,
    )?;
    let i1 = cat.pair_into(&sq3, id2, cat.compose(e1, sq2.p2)?)?;
    let i2 = cat.pair_into(&sq3, cat.compose(e2, sq2.p1)?, id2)?;
    Ok(InducedMaps {
        c0,
        c1,
        sq2,
        sq3,
        sq4,
        legs,
        e1,
        e2,
        m1,
        m2,
        i0,
        i1,
        i2,
    })
}

/// [`assemble_with`] using the left-nested quadruple presentation.
#[allow(clippy::too_many_arguments)]
pub fn assemble(
    h: &TwoCellStructure,
    d: MorId,
    c: MorId,
    e: MorId,
    m: MorId,
    alpha: Cell,
    lambda: Cell,
    rho: Cell,
) -> Result<PseudocategoryData> {
    assemble_with(h, Association::LeftNested, d, c, e, m, alpha, lambda, rho)
}

/// Derives the scaffolding for `(d, c, e, m)`, attaches the coherence
/// cells, and validates the structural invariants.
///
/// Fails with `InvalidPresentation` listing every violated invariant.
/// Coherence equations are not checked here; see
/// [`check_pseudocategory`].
#[allow(clippy::too_many_arguments)]
pub fn assemble_with(
    h: &TwoCellStructure,
    association: Association,
    d: MorId,
    c: MorId,
    e: MorId,
    m: MorId,
    alpha: Cell,
    lambda: Cell,
    rho: Cell,
) -> Result<PseudocategoryData> {
    let maps = induced_maps(&h.cat, association, d, c, e, m)?;
    let data = PseudocategoryData {
        d,
        c,
        e,
        m,
        association,
        maps,
        alpha,
        lambda,
        rho,
    };
    let report = structural_report(h, &data)?;
    if !report.ok() {
        let lines: Vec<String> = report.findings.iter().map(|f| f.to_string()).collect();
        return Err(SesqError::InvalidPresentation(lines.join("; ")));
    }
    Ok(data)
}

/// Records `res` in `r`: a failed check becomes a finding, an evaluation
/// error becomes a finding carrying the error text.
fn note(
    r: &mut ValidationReport,
    axiom: &str,
    witnesses: Vec<String>,
    message: &str,
    res: Result<bool>,
) {
    match res {
        Ok(true) => {}
        Ok(false) => r.push(axiom, witnesses, message.to_string()),
        Err(e) => r.push(axiom, witnesses, format!("{message}: {e}")),
    }
}

/// Checks every structural invariant of `data` and reports the violations.
///
/// Covered: `d e = c e = 1`; the boundaries of `m`; agreement of the
/// stored pullbacks and mediators with recomputation; endpoints and
/// boundaries of the three cells; vanishing of their images under the
/// boundaries; agreement of the unit cells on units; invertibility.
pub fn structural_report(
    h: &TwoCellStructure,
    data: &PseudocategoryData,
) -> Result<ValidationReport> {
    let cat = &h.cat;
    let maps = &data.maps;
    let mut r = ValidationReport::new();
    let id0 = cat.identity(maps.c0)?;
    let id1 = cat.identity(maps.c1)?;

    note(
        &mut r,
        "unit-section",
        vec![cat.morphism_name(data.e)],
        "d . e is not the identity",
        cat.compose(data.d, data.e).map(|de| de == id0),
    );
    note(
        &mut r,
        "unit-section",
        vec![cat.morphism_name(data.e)],
        "c . e is not the identity",
        cat.compose(data.c, data.e).map(|ce| ce == id0),
    );
    note(
        &mut r,
        "mult-boundary",
        vec![cat.morphism_name(data.m)],
        "d . m is not the inner projection boundary",
        (|| Ok(cat.compose(data.d, data.m)? == cat.compose(data.d, maps.sq2.p2)?))(),
    );
    note(
        &mut r,
        "mult-boundary",
        vec![cat.morphism_name(data.m)],
        "c . m is not the outer projection boundary",
        (|| Ok(cat.compose(data.c, data.m)? == cat.compose(data.c, maps.sq2.p1)?))(),
    );
    note(
        &mut r,
        "pullback-witness",
        vec![],
        "stored pullbacks and mediators disagree with recomputation",
        induced_maps(cat, data.association, data.d, data.c, data.e, data.m)
            .map(|fresh| fresh == *maps),
    );

    let cells = [
        ("alpha", &data.alpha, maps.sq3.apex),
        ("lambda", &data.lambda, maps.c1),
        ("rho", &data.rho, maps.c1),
    ];
    for (label, cell, src) in cells {
        if cell.src != src || cell.dst != maps.c1 {
            r.push(
                "cell-endpoints",
                vec![label.to_string(), h.cell_name(cell)],
                format!("{label} does not live between the expected objects"),
            );
        }
    }

    let mm1 = cat.compose(data.m, maps.m1)?;
    let mm2 = cat.compose(data.m, maps.m2)?;
    let me1 = cat.compose(data.m, maps.e1)?;
    let me2 = cat.compose(data.m, maps.e2)?;
    let boundary = [
        ("alpha", &data.alpha, mm1, mm2),
        ("lambda", &data.lambda, me2, id1),
        ("rho", &data.rho, me1, id1),
    ];
    for (label, cell, want_dom, want_cod) in boundary {
        note(
            &mut r,
            "cell-boundary",
            vec![label.to_string(), h.cell_name(cell)],
            &format!("{label} has the wrong domain morphism"),
            h.dom(cell).map(|d| d == want_dom),
        );
        note(
            &mut r,
            "cell-boundary",
            vec![label.to_string(), h.cell_name(cell)],
            &format!("{label} has the wrong codomain morphism"),
            h.cod(cell).map(|c| c == want_cod),
        );
    }

    // The boundaries collapse every coherence cell to a zero cell.
    let d_alpha = cat.compose_chain(&[data.d, maps.sq2.p2, maps.sq3.p2])?;
    let c_alpha = cat.compose_chain(&[data.c, maps.sq2.p1, maps.sq3.p1])?;
    let collapsed = [
        ("lambda", &data.lambda, data.d, data.d),
        ("lambda", &data.lambda, data.c, data.c),
        ("rho", &data.rho, data.d, data.d),
        ("rho", &data.rho, data.c, data.c),
        ("alpha", &data.alpha, data.d, d_alpha),
        ("alpha", &data.alpha, data.c, c_alpha),
    ];
    for (label, cell, along, zero_on) in collapsed {
        note(
            &mut r,
            "boundary-cells",
            vec![label.to_string(), cat.morphism_name(along)],
            &format!("{label} does not vanish under a boundary map"),
            (|| Ok(h.lwhisker(along, cell)? == h.zero(zero_on)?))(),
        );
    }

    note(
        &mut r,
        "unit-cells-agree",
        vec![h.cell_name(&data.lambda), h.cell_name(&data.rho)],
        "lambda and rho disagree on units",
        (|| Ok(h.rwhisker(&data.lambda, data.e)? == h.rwhisker(&data.rho, data.e)?))(),
    );

    for (label, cell) in [
        ("alpha", &data.alpha),
        ("lambda", &data.lambda),
        ("rho", &data.rho),
    ] {
        note(
            &mut r,
            "invertible",
            vec![label.to_string(), h.cell_name(cell)],
            &format!("{label} is not invertible"),
            (|| {
                let inv = h.inverse(cell)?;
                Ok(h.vcomp(cell, &inv)? == h.zero(h.cod(cell)?)?
                    && h.vcomp(&inv, cell)? == h.zero(h.dom(cell)?)?)
            })(),
        );
    }

    Ok(r)
}

/// Errors that mean "this side of the equation does not type-check against
/// the data"; they become findings instead of aborting the check.
fn is_data_error(e: &SesqError) -> bool {
    matches!(
        e,
        SesqError::NotComposable(_)
            | SesqError::NotComposableCells(_)
            | SesqError::NotVerticallyComposable(_)
            | SesqError::NotWhiskerable(_)
            | SesqError::NotInvertible(_)
            | SesqError::TypeMismatch(_)
    )
}

fn check_equation(
    h: &TwoCellStructure,
    r: &mut ValidationReport,
    axiom: &str,
    lhs: impl FnOnce() -> Result<Cell>,
    rhs: impl FnOnce() -> Result<Cell>,
) -> Result<()> {
    let left = match lhs() {
        Ok(cell) => cell,
        Err(e) if is_data_error(&e) => {
            r.push(axiom, vec![], format!("left side does not evaluate: {e}"));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let right = match rhs() {
        Ok(cell) => cell,
        Err(e) if is_data_error(&e) => {
            r.push(axiom, vec![], format!("right side does not evaluate: {e}"));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    if left != right {
        r.push(
            axiom,
            vec![h.cell_name(&left), h.cell_name(&right)],
            "the two sides evaluate to different cells".to_string(),
        );
    }
    Ok(())
}

fn pair2(cat: &FiniteCategory, maps: &InducedMaps, a: MorId, b: MorId) -> Result<MorId> {
    cat.pair_into(&maps.sq2, a, b)
}

fn triple3(
    cat: &FiniteCategory,
    maps: &InducedMaps,
    a: MorId,
    b: MorId,
    c: MorId,
) -> Result<MorId> {
    let ab = pair2(cat, maps, a, b)?;
    let bc = pair2(cat, maps, b, c)?;
    cat.pair_into(&maps.sq3, ab, bc)
}

fn zero_cells(h: &TwoCellStructure, data: &PseudocategoryData) -> Result<(Cell, Cell)> {
    let cat = &h.cat;
    Ok((
        h.zero(cat.identity(data.maps.c0)?)?,
        h.zero(cat.identity(data.maps.c1)?)?,
    ))
}

/// `m . (x * 1)` for a unit-shaped cell `x`: `x` in the outer factor, the
/// zero cell of the identity in the inner one.
fn m_after_cell_times_unit(
    h: &TwoCellStructure,
    data: &PseudocategoryData,
    x: &Cell,
) -> Result<Cell> {
    let (z0, z1) = zero_cells(h, data)?;
    let p = product_cell(h, &data.maps.sq2, &data.maps.sq2, x, &z0, &z1)?;
    h.lwhisker(data.m, &p)
}

/// `m . (1 * x)`: `x` in the inner factor.
fn m_after_unit_times_cell(
    h: &TwoCellStructure,
    data: &PseudocategoryData,
    x: &Cell,
) -> Result<Cell> {
    let (z0, z1) = zero_cells(h, data)?;
    let p = product_cell(h, &data.maps.sq2, &data.maps.sq2, &z1, &z0, x)?;
    h.lwhisker(data.m, &p)
}

/// `m . (alpha * 1)` over the quadruple object: the associator on the
/// outer triple, the zero identity cell on the last factor.
fn m_after_alpha_times_unit(h: &TwoCellStructure, data: &PseudocategoryData) -> Result<Cell> {
    let cat = &h.cat;
    let maps = &data.maps;
    let [k1, k2, k3, k4] = maps.legs;
    let (z0, z1) = zero_cells(h, data)?;
    let sq_prime = PullbackSquare {
        apex: maps.sq4.apex,
        p1: triple3(cat, maps, k1, k2, k3)?,
        p2: k4,
        f: cat.compose_chain(&[data.d, maps.sq2.p2, maps.sq3.p2])?,
        g: data.c,
    };
    let p = product_cell(h, &maps.sq2, &sq_prime, &data.alpha, &z0, &z1)?;
    h.lwhisker(data.m, &p)
}

/// `m . (1 * alpha)`: the associator on the inner triple.
fn m_after_unit_times_alpha(h: &TwoCellStructure, data: &PseudocategoryData) -> Result<Cell> {
    let cat = &h.cat;
    let maps = &data.maps;
    let [k1, k2, k3, k4] = maps.legs;
    let (z0, z1) = zero_cells(h, data)?;
    let sq_prime = PullbackSquare {
        apex: maps.sq4.apex,
        p1: k1,
        p2: triple3(cat, maps, k2, k3, k4)?,
        f: data.d,
        g: cat.compose_chain(&[data.c, maps.sq2.p1, maps.sq3.p1])?,
    };
    let p = product_cell(h, &maps.sq2, &sq_prime, &z1, &z0, &data.alpha)?;
    h.lwhisker(data.m, &p)
}

/// The three quadruple-to-triple mediators that multiply one adjacent pair.
fn collapse_mediators(
    cat: &FiniteCategory,
    data: &PseudocategoryData,
) -> Result<(MorId, MorId, MorId)> {
    let maps = &data.maps;
    let [k1, k2, k3, k4] = maps.legs;
    let inner = cat.compose(data.m, pair2(cat, maps, k3, k4)?)?;
    let middle = cat.compose(data.m, pair2(cat, maps, k2, k3)?)?;
    let outer = cat.compose(data.m, pair2(cat, maps, k1, k2)?)?;
    let one_m_one = triple3(cat, maps, k1, middle, k4)?;
    let m_one_one = triple3(cat, maps, outer, k3, k4)?;
    let one_one_m = triple3(cat, maps, k1, k2, inner)?;
    Ok((one_m_one, m_one_one, one_one_m))
}

fn naturality_findings(
    h: &TwoCellStructure,
    r: &mut ValidationReport,
    label: &str,
    x: &Cell,
    probes: &[Cell],
) -> Result<()> {
    if h.is_lazy() {
        for z in probes.iter().filter(|z| z.dst == x.src) {
            match natural_wrt(h, x, z) {
                Ok(true) => {}
                Ok(false) => r.push(
                    "coherence-natural",
                    vec![label.to_string(), h.cell_name(z)],
                    format!("{label} is not natural with respect to a probe cell"),
                ),
                Err(e) if is_data_error(&e) => r.push(
                    "coherence-natural",
                    vec![label.to_string(), h.cell_name(z)],
                    format!("naturality of {label} does not evaluate: {e}"),
                ),
                Err(e) => return Err(e),
            }
        }
    } else if let Some(z) = naturality_counterexample(h, x)? {
        r.push(
            "coherence-natural",
            vec![label.to_string(), h.cell_name(&z)],
            format!("{label} fails naturality against a witness cell"),
        );
    }
    Ok(())
}

/// Verifies the coherence axioms of `data` over `h`.
///
/// The structural invariants are re-checked first and reported alongside
/// the equation findings.  Equation sides that fail to evaluate against
/// the data are reported as findings on that equation; errors that signal
/// a missing pullback or an unusable backend are returned as errors.
///
/// On lazy backends, `Natural` mode tests naturality of the cells against
/// the caller-supplied `probes` (cells whose destination matches the
/// tested cell's source; others are skipped).  Table backends search for
/// counterexamples exhaustively and ignore `probes`.
pub fn check_pseudocategory(
    h: &TwoCellStructure,
    data: &PseudocategoryData,
    mode: CheckMode,
    probes: &[Cell],
) -> Result<ValidationReport> {
    let cat = &h.cat;
    let mut r = structural_report(h, data)?;

    check_equation(
        h,
        &mut r,
        "pentagon",
        || {
            let (one_m_one, _, _) = collapse_mediators(cat, data)?;
            let outer = m_after_alpha_times_unit(h, data)?;
            let mid = h.rwhisker(&data.alpha, one_m_one)?;
            let inner = m_after_unit_times_alpha(h, data)?;
            eval_chain(h, &[outer, mid, inner])
        },
        || {
            let (_, m_one_one, one_one_m) = collapse_mediators(cat, data)?;
            let first = h.rwhisker(&data.alpha, m_one_one)?;
            let second = h.rwhisker(&data.alpha, one_one_m)?;
            eval_chain(h, &[first, second])
        },
    )?;

    match mode {
        CheckMode::Natural => {
            check_equation(
                h,
                &mut r,
                "unit-middle",
                || {
                    let left = m_after_cell_times_unit(h, data, &data.rho)?;
                    let right = h.rwhisker(&data.alpha, data.maps.i0)?;
                    eval_chain(h, &[left, right])
                },
                || m_after_unit_times_cell(h, data, &data.lambda),
            )?;
            for (label, cell) in [
                ("alpha", &data.alpha),
                ("lambda", &data.lambda),
                ("rho", &data.rho),
            ] {
                naturality_findings(h, &mut r, label, cell, probes)?;
            }
        }
        CheckMode::NonNatural => {
            check_equation(
                h,
                &mut r,
                "unit-middle",
                || h.rwhisker(&data.alpha, data.maps.i0),
                || {
                    let inv = h.inverse(&m_after_cell_times_unit(h, data, &data.rho)?)?;
                    let tail = m_after_unit_times_cell(h, data, &data.lambda)?;
                    eval_chain(h, &[inv, tail])
                },
            )?;
            check_equation(
                h,
                &mut r,
                "unit-left",
                || h.rwhisker(&data.alpha, data.maps.i2),
                || {
                    let inv = h.inverse(&m_after_cell_times_unit(h, data, &data.lambda)?)?;
                    let tail = h.rwhisker(&data.lambda, data.m)?;
                    eval_chain(h, &[inv, tail])
                },
            )?;
            check_equation(
                h,
                &mut r,
                "unit-right",
                || h.rwhisker(&data.alpha, data.maps.i1),
                || {
                    let inv = h.inverse(&h.rwhisker(&data.rho, data.m)?)?;
                    let tail = m_after_unit_times_cell(h, data, &data.rho)?;
                    eval_chain(h, &[inv, tail])
                },
            )?;
            for (x, z) in [
                (&data.lambda, &data.lambda),
                (&data.lambda, &data.rho),
                (&data.rho, &data.rho),
                (&data.rho, &data.lambda),
            ] {
                match natural_wrt(h, x, z) {
                    Ok(true) => {}
                    Ok(false) => r.push(
                        "unit-naturality",
                        vec![h.cell_name(x), h.cell_name(z)],
                        "the unit cells do not commute past each other".to_string(),
                    ),
                    Err(e) if is_data_error(&e) => r.push(
                        "unit-naturality",
                        vec![h.cell_name(x), h.cell_name(z)],
                        format!("unit naturality does not evaluate: {e}"),
                    ),
                    Err(e) => return Err(e),
                }
            }
        }
    }

    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{codiscrete_lazy, discrete_lazy};
    use crate::fincat::ExtObject;
    use std::sync::Arc;

    /// One-object internal category in extensional finite sets with the
    /// given multiplication table over `n` morphism elements.
    fn one_object_internal(
        n: usize,
        mult: impl Fn(usize, usize) -> usize,
    ) -> (Arc<FiniteCategory>, MorId, MorId, MorId, MorId) {
        let cat = Arc::new(FiniteCategory::ext(vec![
            ("pt".to_string(), ExtObject::Set(1)),
            ("el".to_string(), ExtObject::Set(n)),
        ]));
        let pt = cat.object_named("pt").unwrap();
        let el = cat.object_named("el").unwrap();
        let d = cat
            .intern_morphism("d", el, pt, crate::fincat::ExtMor::Fn(vec![0; n]))
            .unwrap();
        let c = cat
            .intern_morphism("c", el, pt, crate::fincat::ExtMor::Fn(vec![0; n]))
            .unwrap();
        let e = cat
            .intern_morphism("e", pt, el, crate::fincat::ExtMor::Fn(vec![0]))
            .unwrap();
        let sq2 = cat.pullback(d, c).unwrap();
        let pairs = cat.pullback_pairs(&sq2).unwrap();
        let graph = pairs.iter().map(|&(x, y)| mult(x, y)).collect();
        let m = cat
            .intern_morphism("m", sq2.apex, el, crate::fincat::ExtMor::Fn(graph))
            .unwrap();
        (cat, d, c, e, m)
    }

    fn zero_data(
        h: &TwoCellStructure,
        d: MorId,
        c: MorId,
        e: MorId,
        m: MorId,
        association: Association,
    ) -> Result<PseudocategoryData> {
        let cat = &h.cat;
        let maps = induced_maps(cat, association, d, c, e, m)?;
        let alpha = h.zero(cat.compose(m, maps.m1)?)?;
        let lambda = h.zero(cat.compose(m, maps.e2)?)?;
        let rho = h.zero(cat.compose(m, maps.e1)?)?;
        assemble_with(h, association, d, c, e, m, alpha, lambda, rho)
    }

    #[test]
    fn z2_internal_groupoid_passes_both_modes() {
        let (cat, d, c, e, m) = one_object_internal(2, |x, y| (x + y) % 2);
        let h = discrete_lazy(cat);
        let data = zero_data(&h, d, c, e, m, Association::LeftNested).unwrap();
        let probes = [h.zero(data.d).unwrap(), h.zero(data.m).unwrap()];
        let natural = check_pseudocategory(&h, &data, CheckMode::Natural, &probes).unwrap();
        assert!(natural.ok(), "natural mode: {natural}");
        let plain = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
        assert!(plain.ok(), "non-natural mode: {plain}");
    }

    #[test]
    fn codiscrete_accepts_any_precategory() {
        // Non-associative multiplication with a two-sided unit: the
        // codiscrete structure has unique parallel cells, so only the
        // structural layer can fail, and it does not.
        let (cat, d, c, e, m) = one_object_internal(3, |x, y| match (x, y) {
            (2, 2) => 2,
            _ => (x + y) % 3,
        });
        let h = codiscrete_lazy(cat);
        let maps = induced_maps(&h.cat, Association::LeftNested, d, c, e, m).unwrap();
        let mm1 = h.cat.compose(m, maps.m1).unwrap();
        let mm2 = h.cat.compose(m, maps.m2).unwrap();
        assert_ne!(mm1, mm2, "fixture must be honestly non-associative");
        let me1 = h.cat.compose(m, maps.e1).unwrap();
        let me2 = h.cat.compose(m, maps.e2).unwrap();
        let id1 = h.cat.identity(maps.c1).unwrap();
        let pair = |src: ObjId, lower: MorId, upper: MorId| Cell {
            src,
            dst: maps.c1,
            value: crate::cellstruct::CellValue::Pair { lower, upper },
        };
        let alpha = pair(maps.sq3.apex, mm1, mm2);
        let lambda = pair(maps.c1, me2, id1);
        let rho = pair(maps.c1, me1, id1);
        let data =
            assemble(&h, d, c, e, m, alpha, lambda, rho).expect("structural layer accepts it");
        for mode in [CheckMode::Natural, CheckMode::NonNatural] {
            let report = check_pseudocategory(&h, &data, mode, &[]).unwrap();
            assert!(report.ok(), "{report}");
        }
    }

    #[test]
    fn broken_associativity_fails_the_pentagon_with_a_witness() {
        let (cat, d, c, e, m) = one_object_internal(3, |x, y| match (x, y) {
            (2, 2) => 2,
            _ => (x + y) % 3,
        });
        let h = discrete_lazy(cat);
        // Zero cells cannot bridge the broken associator boundary, so
        // assembly rejects the data outright.
        let err = zero_data(&h, d, c, e, m, Association::LeftNested).unwrap_err();
        assert!(matches!(err, SesqError::InvalidPresentation(_)));
        // Building the record by hand and checking it anyway surfaces the
        // pentagon failure itself, with the mismatched composites named.
        let maps = induced_maps(&h.cat, Association::LeftNested, d, c, e, m).unwrap();
        let mm1 = h.cat.compose(m, maps.m1).unwrap();
        let data = PseudocategoryData {
            d,
            c,
            e,
            m,
            association: Association::LeftNested,
            maps,
            alpha: h.zero(mm1).unwrap(),
            lambda: h
                .zero(h.cat.identity(h.cat.object_named("el").unwrap()).unwrap())
                .unwrap(),
            rho: h
                .zero(h.cat.identity(h.cat.object_named("el").unwrap()).unwrap())
                .unwrap(),
        };
        let report = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
        let pentagon = report.with_axiom("pentagon");
        assert!(!pentagon.is_empty(), "expected a pentagon finding: {report}");
        assert!(!pentagon[0].message.is_empty());
        assert!(!report.with_axiom("cell-boundary").is_empty());
    }

    #[test]
    fn association_choice_does_not_change_the_verdict() {
        let (cat, d, c, e, m) = one_object_internal(2, |x, y| (x + y) % 2);
        let h = discrete_lazy(cat);
        for association in [Association::LeftNested, Association::RightNested] {
            let data = zero_data(&h, d, c, e, m, association).unwrap();
            let report = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
            assert!(report.ok(), "{association:?}: {report}");
        }
    }

    #[test]
    fn natural_verdict_implies_non_natural_verdict() {
        let (cat, d, c, e, m) = one_object_internal(4, |x, y| (x + y) % 4);
        let h = discrete_lazy(cat);
        let data = zero_data(&h, d, c, e, m, Association::LeftNested).unwrap();
        let probes = [h.zero(data.m).unwrap()];
        let natural = check_pseudocategory(&h, &data, CheckMode::Natural, &probes).unwrap();
        let plain = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
        assert!(natural.ok());
        assert!(plain.ok(), "natural mode passed but non-natural failed: {plain}");
    }
}
