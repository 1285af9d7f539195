//! One runner per subcommand. Each builds its experiment from the parsed
//! flags, emits one table, and reports whether every asserted bound held
//! (`Ok(false)` becomes exit code 2). String errors are usage errors and
//! name the offending flag.

use crate::args::*;
use crate::emit::{emit, Table};
use crate::parse;
use cosetcount::apps::{self, AffineSpace, DigitBasis};
use cosetcount::arith;
use cosetcount::charsum::{self, CharCtx, MultChar};
use cosetcount::counting;
use cosetcount::field::{FieldCtx, FqElem, DEFAULT_MAX_Q};
use cosetcount::indep::{self, IndepVerdict, TupleSpec, DEFAULT_MAX_CELLS};
use cosetcount::poly::FqPoly;
use serde::Serialize;
use serde_json::json;

pub fn run(cli: Cli) -> Result<bool, String> {
    let out = &cli.output;
    match &cli.command {
        Command::Count(a) => cmd_count(a, out),
        Command::Indep(a) => cmd_indep(a, out),
        Command::Weil(a) => cmd_weil(a, out),
        Command::Squares(a) => cmd_squares(a, out),
        Command::Primroots(a) => cmd_primroots(a, out),
        Command::Subspace(a) => cmd_subspace(a, out),
        Command::Digits(a) => cmd_digits(a, out),
    }
}

fn field_ctx(f: &FieldArgs, out: &OutputArgs) -> Result<FieldCtx, String> {
    FieldCtx::with_cap(f.p, f.n, out.max_q.unwrap_or(DEFAULT_MAX_Q))
        .map_err(|e| format!("--p/--n: {e}"))
}

/// Inverse of the element literal syntax: plain integer in a prime field,
/// colon-joined coordinates in an extension.
fn fmt_elem(ctx: &FieldCtx, v: &FqElem) -> String {
    if ctx.n() == 1 {
        v.coeffs()[0].to_string()
    } else {
        v.coeffs()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(":")
    }
}

/// Inverse of the polynomial literal syntax.
fn fmt_poly(ctx: &FieldCtx, f: &FqPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.coeffs()
        .iter()
        .map(|c| fmt_elem(ctx, c))
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_residues(res: &[u64]) -> String {
    res.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(":")
}

// ----- count -----

#[derive(Serialize)]
struct CountRow {
    q: u64,
    polys: String,
    divisors: String,
    cell: String,
    count: u64,
    excluded: u64,
    z: u64,
    /// Scaled deviation N*D - q.
    h: i64,
    independent: bool,
    /// Exact deviation check; empty when the tuple is dependent and the
    /// bound is not asserted.
    pass: Option<bool>,
}

fn cmd_count(a: &CountArgs, out: &OutputArgs) -> Result<bool, String> {
    let ctx = field_ctx(&a.field, out)?;
    let polys = parse::polys(&ctx, &a.polys).map_err(|e| format!("--polys: {e}"))?;
    let divisors = parse::u64_list(&a.divisors).map_err(|e| format!("--divisors: {e}"))?;
    let spec = TupleSpec::with_cell_cap(
        &ctx,
        polys,
        divisors,
        out.max_cells.unwrap_or(DEFAULT_MAX_CELLS),
    )
    .map_err(|e| format!("--polys/--divisors: {e}"))?;
    let independent = indep::check_independence(&ctx, &spec)
        .map_err(|e| e.to_string())?
        .is_independent();
    let dist = counting::full_distribution_threads(&ctx, &spec, out.threads)
        .map_err(|e| e.to_string())?;
    let polys_echo = spec
        .polys()
        .iter()
        .map(|f| fmt_poly(&ctx, f))
        .collect::<Vec<_>>()
        .join(";");
    let divisors_echo = spec
        .divisors()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut rows = Vec::with_capacity(dist.counts.len());
    let mut all_pass = true;
    for (idx, &n) in dist.counts.iter().enumerate() {
        let chk = counting::deviation_check(&ctx, &spec, n).map_err(|e| e.to_string())?;
        let pass = independent.then_some(chk.holds);
        if pass == Some(false) {
            all_pass = false;
        }
        rows.push(CountRow {
            q: ctx.q(),
            polys: polys_echo.clone(),
            divisors: divisors_echo.clone(),
            cell: fmt_residues(&spec.cell_residues(idx as u64)),
            count: n,
            excluded: dist.excluded,
            z: chk.z,
            h: chk.h_num as i64,
            independent,
            pass,
        });
    }
    let table = Table {
        anchor: "main-count",
        config: json!({
            "command": "count",
            "p": a.field.p,
            "n": a.field.n,
            "polys": a.polys,
            "divisors": a.divisors,
            "threads": out.threads,
        }),
        rows,
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(all_pass)
}

// ----- indep -----

#[derive(Serialize)]
struct IndepRow {
    q: u64,
    polys: String,
    divisors: String,
    independent: bool,
    witness_a: Option<String>,
    witness_unit: Option<String>,
    witness_g: Option<String>,
    identity_checked: Option<u64>,
    identity_skipped: Option<u64>,
    identity_holds: Option<bool>,
}

fn cmd_indep(a: &IndepArgs, out: &OutputArgs) -> Result<bool, String> {
    let ctx = field_ctx(&a.field, out)?;
    let polys = parse::polys(&ctx, &a.polys).map_err(|e| format!("--polys: {e}"))?;
    let divisors = parse::u64_list(&a.divisors).map_err(|e| format!("--divisors: {e}"))?;
    let spec = TupleSpec::with_cell_cap(
        &ctx,
        polys,
        divisors,
        out.max_cells.unwrap_or(DEFAULT_MAX_CELLS),
    )
    .map_err(|e| format!("--polys/--divisors: {e}"))?;
    let verdict = indep::check_independence(&ctx, &spec).map_err(|e| e.to_string())?;
    let polys_echo = spec
        .polys()
        .iter()
        .map(|f| fmt_poly(&ctx, f))
        .collect::<Vec<_>>()
        .join(";");
    let divisors_echo = spec
        .divisors()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let (row, all_pass) = match verdict {
        IndepVerdict::Independent => (
            IndepRow {
                q: ctx.q(),
                polys: polys_echo,
                divisors: divisors_echo,
                independent: true,
                witness_a: None,
                witness_unit: None,
                witness_g: None,
                identity_checked: None,
                identity_skipped: None,
                identity_holds: None,
            },
            true,
        ),
        IndepVerdict::Dependent(w) => {
            let idrep =
                indep::dependence_identity(&ctx, &spec, &w).map_err(|e| e.to_string())?;
            (
                IndepRow {
                    q: ctx.q(),
                    polys: polys_echo,
                    divisors: divisors_echo,
                    independent: false,
                    witness_a: Some(
                        w.a.iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(","),
                    ),
                    witness_unit: Some(fmt_elem(&ctx, &w.unit)),
                    witness_g: Some(fmt_poly(&ctx, &w.g)),
                    identity_checked: Some(idrep.checked),
                    identity_skipped: Some(idrep.skipped),
                    identity_holds: Some(idrep.holds),
                },
                idrep.holds,
            )
        }
    };
    let table = Table {
        anchor: "independence",
        config: json!({
            "command": "indep",
            "p": a.field.p,
            "n": a.field.n,
            "polys": a.polys,
            "divisors": a.divisors,
        }),
        rows: vec![row],
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(all_pass)
}

// ----- weil -----

#[derive(Serialize)]
struct WeilRow {
    q: u64,
    f: String,
    k: u64,
    order: u64,
    sum_re: f64,
    sum_im: f64,
    magnitude: f64,
    distinct_roots: u64,
    bound: f64,
    applicable: bool,
    pass: bool,
}

fn cmd_weil(a: &WeilArgs, out: &OutputArgs) -> Result<bool, String> {
    let ctx = field_ctx(&a.field, out)?;
    let f = parse::poly(&ctx, &a.f).map_err(|e| format!("--f: {e}"))?;
    if f.is_zero() {
        return Err("--f: the zero polynomial has no character sums".into());
    }
    let m = (ctx.q() - 1).max(1);
    let ks: Vec<u64> = if let Some(k) = a.k {
        if k >= m {
            return Err(format!("--k: index {k} out of range (q - 1 = {m})"));
        }
        vec![k]
    } else if let Some(r) = a.order {
        if r == 0 || m % r != 0 {
            return Err(format!("--order: {r} does not divide q - 1 = {m}"));
        }
        (0..m).filter(|&k| m / arith::gcd(m, k) == r).collect()
    } else {
        (1..m).collect()
    };
    let cc = CharCtx::new(&ctx);
    let f_echo = fmt_poly(&ctx, &f);
    let mut rows = Vec::with_capacity(ks.len());
    let mut all_pass = true;
    for k in ks {
        let chi = MultChar::of_index(&ctx, k);
        let rep = charsum::weil_bound_check(&cc, &chi, &f).map_err(|e| e.to_string())?;
        all_pass &= rep.pass;
        rows.push(WeilRow {
            q: ctx.q(),
            f: f_echo.clone(),
            k,
            order: chi.order(),
            sum_re: rep.sum_re,
            sum_im: rep.sum_im,
            magnitude: rep.magnitude,
            distinct_roots: rep.distinct_roots,
            bound: rep.bound,
            applicable: rep.applicable,
            pass: rep.pass,
        });
    }
    let table = Table {
        anchor: "weil-bound",
        config: json!({
            "command": "weil",
            "p": a.field.p,
            "n": a.field.n,
            "f": a.f,
            "k": a.k,
            "order": a.order,
        }),
        rows,
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(all_pass)
}

// ----- squares -----

#[derive(Serialize)]
struct SquaresRow {
    q: u64,
    t: u64,
    count: u64,
    found_at: Option<u64>,
    guaranteed: bool,
    pass: bool,
}

fn cmd_squares(a: &SquaresArgs, out: &OutputArgs) -> Result<bool, String> {
    let ctx = field_ctx(&a.field, out)?;
    let rep = apps::consecutive_square_search(&ctx, a.t).map_err(|e| format!("--t: {e}"))?;
    let pass = !rep.guaranteed || rep.found_at.is_some();
    let table = Table {
        anchor: "square-runs",
        config: json!({
            "command": "squares",
            "p": a.field.p,
            "n": a.field.n,
            "t": a.t,
        }),
        rows: vec![SquaresRow {
            q: rep.q,
            t: rep.t,
            count: rep.count,
            found_at: rep.found_at,
            guaranteed: rep.guaranteed,
            pass,
        }],
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(pass)
}

// ----- primroots -----

#[derive(Serialize)]
struct PrimrootsRow {
    p: u64,
    f: String,
    count: u64,
    phi: u64,
    s: u32,
    z: u64,
    predicted: f64,
    bound: f64,
    applicable: bool,
    /// Exact deviation check; empty when inapplicable.
    pass: Option<bool>,
}

fn primroots_row(p: u64, zf: &cosetcount::ZPoly, cap: u64) -> Result<Option<PrimrootsRow>, String> {
    let ctx = FieldCtx::with_cap(p, 1, cap).map_err(|e| e.to_string())?;
    let red = cosetcount::intpoly::reduce_mod_p(&ctx, zf).map_err(|e| e.to_string())?;
    if red.poly.degree().is_none_or(|d| d < 1) {
        return Ok(None); // degenerated to a constant mod p
    }
    let rep = apps::primitive_root_image_count(&ctx, &red.poly).map_err(|e| e.to_string())?;
    let m = (rep.q - 1) as f64;
    Ok(Some(PrimrootsRow {
        p,
        f: fmt_poly(&ctx, &red.poly),
        count: rep.count,
        phi: rep.phi,
        s: rep.s,
        z: rep.z,
        predicted: rep.q as f64 * rep.phi as f64 / m,
        bound: (1u64 << rep.s) as f64 * rep.z as f64 * (rep.q as f64).sqrt(),
        applicable: rep.applicable,
        pass: rep.bound_holds,
    }))
}

fn cmd_primroots(a: &PrimrootsArgs, out: &OutputArgs) -> Result<bool, String> {
    let zf = parse::zpoly(&a.f).map_err(|e| format!("--f: {e}"))?;
    if zf.is_zero() {
        return Err("--f: the zero polynomial has no image".into());
    }
    if a.pmin > a.pmax {
        return Err("--pmin: exceeds --pmax".into());
    }
    let cap = out.max_q.unwrap_or(DEFAULT_MAX_Q);
    if a.pmax > cap {
        return Err(format!(
            "--pmax: {} exceeds the field size cap {cap} (raise with --max-q)",
            a.pmax
        ));
    }
    let primes = arith::primes_in_range(a.pmin.max(2), a.pmax);
    let workers = out.threads.clamp(1, 64).min(primes.len().max(1));
    let mut rows: Vec<PrimrootsRow> = Vec::with_capacity(primes.len());
    if workers <= 1 {
        for &p in &primes {
            if let Some(row) = primroots_row(p, &zf, cap)? {
                rows.push(row);
            }
        }
    } else {
        // Contiguous chunks keep the merged output in prime order, so the
        // rows are identical to a single-threaded run.
        let chunk = primes.len().div_ceil(workers);
        let results: Vec<Result<Vec<PrimrootsRow>, String>> = std::thread::scope(|scope| {
            let handles: Vec<_> = primes
                .chunks(chunk)
                .map(|ps| {
                    let zf = &zf;
                    scope.spawn(move || {
                        let mut part = Vec::with_capacity(ps.len());
                        for &p in ps {
                            if let Some(row) = primroots_row(p, zf, cap)? {
                                part.push(row);
                            }
                        }
                        Ok(part)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for part in results {
            rows.extend(part?);
        }
    }
    let all_pass = rows.iter().all(|r| r.pass != Some(false));
    let table = Table {
        anchor: "primitive-roots",
        config: json!({
            "command": "primroots",
            "f": a.f,
            "pmin": a.pmin,
            "pmax": a.pmax,
            "threads": out.threads,
        }),
        rows,
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(all_pass)
}

// ----- subspace -----

#[derive(Serialize)]
struct SubspaceRow {
    q: u64,
    d: u64,
    dim: u32,
    size: u64,
    offset: String,
    class: u64,
    count: u64,
    excluded: u64,
    pass: bool,
}

fn cmd_subspace(a: &SubspaceArgs, out: &OutputArgs) -> Result<bool, String> {
    let ctx = field_ctx(&a.field, out)?;
    let basis = parse::elems(&ctx, &a.basis).map_err(|e| format!("--basis: {e}"))?;
    let offset = match &a.offset {
        Some(lit) => parse::elem(&ctx, lit).map_err(|e| format!("--offset: {e}"))?,
        None => ctx.zero(),
    };
    let space = AffineSpace::new(&ctx, offset, basis).map_err(|e| format!("--basis: {e}"))?;
    let offset_echo = fmt_elem(&ctx, space.offset());
    let rep = apps::subspace_log_distribution(&ctx, &space, a.d)
        .map_err(|e| format!("--d: {e}"))?;
    let rows = rep
        .counts
        .iter()
        .enumerate()
        .map(|(cls, &count)| SubspaceRow {
            q: rep.q,
            d: rep.d,
            dim: rep.dim,
            size: rep.size,
            offset: offset_echo.clone(),
            class: cls as u64,
            count,
            excluded: rep.excluded,
            pass: rep.bounds_hold,
        })
        .collect();
    let table = Table {
        anchor: "subspace-logs",
        config: json!({
            "command": "subspace",
            "p": a.field.p,
            "n": a.field.n,
            "basis": a.basis,
            "offset": a.offset,
            "d": a.d,
        }),
        rows,
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(rep.bounds_hold)
}

// ----- digits -----

#[derive(Serialize)]
struct DigitsRow {
    q: u64,
    d: u64,
    value: u64,
    hyperplane_size: u64,
    excluded: u64,
    min_count: u64,
    max_count: u64,
    pass: bool,
}

fn cmd_digits(a: &DigitsArgs, out: &OutputArgs) -> Result<bool, String> {
    let ctx = field_ctx(&a.field, out)?;
    let basis = match &a.basis {
        Some(lit) => {
            let elems = parse::elems(&ctx, lit).map_err(|e| format!("--basis: {e}"))?;
            DigitBasis::new(&ctx, elems).map_err(|e| format!("--basis: {e}"))?
        }
        None => DigitBasis::standard(&ctx),
    };
    let mut rows = Vec::with_capacity(ctx.p() as usize);
    let mut all_pass = true;
    for value in 0..ctx.p() {
        let rep = apps::digit_sum_counts(&ctx, &basis, value, a.d)
            .map_err(|e| format!("--d: {e}"))?;
        all_pass &= rep.bounds_hold;
        rows.push(DigitsRow {
            q: rep.q,
            d: rep.d,
            value,
            hyperplane_size: rep.hyperplane_size,
            excluded: rep.excluded,
            min_count: rep.counts.iter().copied().min().unwrap_or(0),
            max_count: rep.counts.iter().copied().max().unwrap_or(0),
            pass: rep.bounds_hold,
        });
    }
    let table = Table {
        anchor: "digit-classes",
        config: json!({
            "command": "digits",
            "p": a.field.p,
            "n": a.field.n,
            "d": a.d,
            "basis": a.basis,
        }),
        rows,
    };
    emit(out, &table).map_err(|e| e.to_string())?;
    Ok(all_pass)
}
