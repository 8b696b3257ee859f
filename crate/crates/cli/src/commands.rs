use clap::ValueEnum;
use mesharc_core::algebra::mesh_algebra;
use mesharc_core::covering::{
    check_dual_bimodule_lift, graded_syzygy_shift, half_grading, hub_grading, lift_nakayama,
    smash_isomorphism_to_quotient, GradedShifts, NakayamaLift, SmashProduct,
};
use mesharc_core::error::MeshError;
use mesharc_core::field::{Field, FieldSpec};
use mesharc_core::oracle;
use mesharc_core::orbit::{orbit_presentation, OrbitPresentation};
use mesharc_core::quiver::{
    build_dynkin, build_quotient_quiver, generalized_preprojective_quiver, parse_quiver_spec,
    DynkinDatum, DynkinFamily, QuotientSpec, RhoKind,
};
use mesharc_core::report::*;
use mesharc_core::resolution::{
    build_resolution_start, min_cy_exponent_direct, twist_data, CyDirect,
};
use mesharc_core::with_field;

pub fn parse_family_rank(s: &str) -> Result<DynkinDatum, MeshError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(MeshError::Parse("empty family".into()));
    }
    let (fam, rank) = s.split_at(1);
    let family = match fam {
        "A" | "a" => DynkinFamily::A,
        "B" | "b" => DynkinFamily::B,
        "C" | "c" => DynkinFamily::C,
        "D" | "d" => DynkinFamily::D,
        "E" | "e" => DynkinFamily::E,
        "F" | "f" => DynkinFamily::F,
        "G" | "g" => DynkinFamily::G,
        "L" | "l" => DynkinFamily::L,
        _ => return Err(MeshError::Parse(format!("unknown family `{fam}`"))),
    };
    let rank: usize = rank
        .parse()
        .map_err(|_| MeshError::Parse(format!("bad rank in `{s}`")))?;
    build_dynkin(family, rank)
}

pub fn parse_fraction(s: &str) -> Result<(u64, u64), MeshError> {
    let bad = || MeshError::Parse(format!("bad fraction `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => Ok((
            n.trim().parse().map_err(|_| bad())?,
            d.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok((s.trim().parse().map_err(|_| bad())?, 1)),
    }
}

/// Layer bound: the environment override, else the Coxeter number of the
/// cover (the expected Loewy length plus one).
fn max_len(spec: &QuotientSpec) -> usize {
    std::env::var("MESHARC_MAXLEN")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(spec.base.h_delta as usize)
}

pub fn build(
    spec_str: &str,
    fs: FieldSpec,
    dot: Option<&str>,
    dump: Option<&str>,
) -> Result<BuildReport, MeshError> {
    let spec = parse_quiver_spec(spec_str)?;
    let q = build_quotient_quiver(&spec)?;
    let ml = max_len(&spec);
    let (dimension, loewy_length, cartan_matrix) = with_field!(fs, |f| {
        let alg = mesh_algebra(&q, f, ml)?;
        if let Some(path) = dump {
            let payload = serde_json::to_string_pretty(&alg.structure_json())
                .expect("serializable dump");
            std::fs::write(path, payload)
                .map_err(|e| MeshError::Parse(format!("cannot write {path}: {e}")))?;
        }
        (alg.dim(), alg.loewy_length(), alg.cartan_matrix())
    });
    let dot_path = match dot {
        Some(p) => {
            std::fs::write(p, q.to_dot())
                .map_err(|e| MeshError::Parse(format!("cannot write {p}: {e}")))?;
            Some(p.to_string())
        }
        None => None,
    };
    Ok(BuildReport {
        schema: SCHEMA_VERSION,
        input: spec_str.to_string(),
        characteristic: fs.characteristic(),
        vertices: q.n_vertices(),
        arrows: q.n_arrows(),
        dimension,
        loewy_length,
        cartan_matrix,
        dot_path,
    })
}

pub fn oracle(delta: &str, f: &str, t: u8, fs: FieldSpec) -> Result<OracleReport, MeshError> {
    let datum = parse_family_rank(delta)?;
    let (fn_, fd) = parse_fraction(f)?;
    let rfs = oracle::RFSType::new(datum, fn_, fd, t, fs)?;
    let verdict = oracle::oracle_verdict(&rfs)?;
    Ok(OracleReport {
        schema: SCHEMA_VERSION,
        input: format!("type ({delta}, {f}, {t}) over characteristic {fs}"),
        verdict,
    })
}

pub fn resolve(
    spec_str: &str,
    fs: FieldSpec,
    dmax: Option<usize>,
) -> Result<ResolveReport, MeshError> {
    let spec = parse_quiver_spec(spec_str)?;
    let q = build_quotient_quiver(&spec)?;
    let ml = max_len(&spec);
    with_field!(fs, |f| resolve_impl(spec_str, &q, f, fs, ml, dmax))
}

fn resolve_impl<F: Field>(
    input: &str,
    q: &mesharc_core::quiver::TranslationQuiver,
    f: F,
    fs: FieldSpec,
    ml: usize,
    dmax: Option<usize>,
) -> Result<ResolveReport, MeshError> {
    let alg = mesh_algebra(q, f, ml)?;
    let rs = build_resolution_start(&alg);
    let data = twist_data(&alg)?;
    let d_max = dmax.unwrap_or_else(|| mesharc_core::resolution::default_d_max(alg.n_vertices()));
    let direct = min_cy_exponent_direct(&alg, &data, d_max);
    let (minimal_d, inconclusive_at) = match direct {
        CyDirect::Found { d } => (Some(d), None),
        CyDirect::NoneUpTo { .. } => (None, None),
        CyDirect::Inconclusive { at_d } => (None, Some(at_d)),
    };
    let twist_arrow_images = data
        .mu
        .arrow_images(&alg)
        .iter()
        .enumerate()
        .map(|(a, img)| ArrowImage {
            arrow: alg.quiver.arrows[a].name.clone(),
            image: alg.display_element(img),
        })
        .collect();
    Ok(ResolveReport {
        schema: SCHEMA_VERSION,
        input: input.to_string(),
        characteristic: fs.characteristic(),
        dimension: alg.dim(),
        p0_summands: rs.p0.summands.len(),
        p1_summands: rs.p1.summands.len(),
        p2_summands: rs.p2.summands.len(),
        nakayama_permutation: data.dual.pi.clone(),
        twist_vertex_permutation: data.mu.vertex_perm.clone(),
        twist_arrow_images,
        minimal_d,
        d_max,
        provenance: "direct-computation",
        witness_available: minimal_d.is_some(),
        inconclusive_at,
    })
}

pub fn cover(base: &str, m: u64, fs: FieldSpec) -> Result<CoverReport, MeshError> {
    let datum = parse_family_rank(base)?;
    with_field!(fs, |f| cover_impl(base, datum, m, f, fs))
}

fn cover_impl<F: Field>(
    base_str: &str,
    datum: DynkinDatum,
    m: u64,
    f: F,
    fs: FieldSpec,
) -> Result<CoverReport, MeshError> {
    // base algebra and its grading: half-grading for doubled trees, hub
    // grading for the rank-2 fork quotient
    let (base_alg, grading, quotient_spec) = if datum.is_simply_laced() {
        let pspec = QuotientSpec::new(datum, 1, RhoKind::None)?;
        let q = build_quotient_quiver(&pspec)?;
        let alg = mesh_algebra(&q, f.clone(), datum.h_delta as usize)?;
        let g = half_grading(&alg, m)?;
        let qspec = QuotientSpec::new(datum, m as usize, RhoKind::None)?;
        (alg, g, qspec)
    } else if datum.family == DynkinFamily::G {
        let q = generalized_preprojective_quiver(DynkinFamily::G, 2)?;
        let alg = mesh_algebra(&q, f.clone(), datum.h_delta as usize)?;
        let g = hub_grading(&alg, m)?;
        let (cover, _) = datum.cover().unwrap();
        let rho = if m % 3 == 0 {
            RhoKind::None
        } else {
            RhoKind::Triality
        };
        let qspec = QuotientSpec::new(cover, m as usize, rho)?;
        (alg, g, qspec)
    } else {
        return Err(MeshError::Unsupported(format!(
            "cover expects a simply laced base or G2, got {base_str}"
        )));
    };
    let smash = SmashProduct::new(&base_alg, grading.clone());
    let quot_q = build_quotient_quiver(&quotient_spec)?;
    let quot = mesh_algebra(&quot_q, f, quotient_spec.base.h_delta as usize)?;
    let quotient_isomorphic = smash_isomorphism_to_quotient(&smash, &quot).is_ok();
    check_dual_bimodule_lift(&smash)?;
    let dual = base_alg.socle_and_dual_basis()?;
    let nu = base_alg.nakayama_automorphism(&dual)?;
    let (nakayama_shift, simple_syzygy_shifts) = match lift_nakayama(&smash, &dual, &nu)? {
        NakayamaLift::Graded { shift, .. } => (Some(shift), None),
        NakayamaLift::Ungraded {
            simple_syzygy_shifts,
        } => (None, Some(simple_syzygy_shifts)),
    };
    let (xi_degree, omega6_shift, mixed_xi_degrees) =
        match graded_syzygy_shift(&base_alg, &dual, &grading)? {
            GradedShifts::Uniform {
                xi_degree,
                omega6_shift,
                ..
            } => (Some(xi_degree), Some(omega6_shift), None),
            GradedShifts::Mixed { xi_degrees } => (None, None, Some(xi_degrees)),
        };
    Ok(CoverReport {
        schema: SCHEMA_VERSION,
        input: format!("{base_str} with modulus {m}"),
        characteristic: fs.characteristic(),
        modulus: m,
        base_dimension: base_alg.dim(),
        smash_dimension: smash.dim(),
        quotient_isomorphic,
        dual_lift_checked: true,
        nakayama_shift,
        simple_syzygy_shifts,
        xi_degree,
        omega6_shift,
        mixed_xi_degrees,
    })
}

fn parse_f_word(s: &str) -> Result<(i64, i64), MeshError> {
    let mut m: Option<i64> = None;
    let mut d: Option<i64> = None;
    for tok in s.split_whitespace() {
        let (name, exp) = tok.split_once('^').ok_or_else(|| {
            MeshError::Parse(format!("expected tokens like S^2 or Sigma^-1, got `{tok}`"))
        })?;
        let e: i64 = exp
            .parse()
            .map_err(|_| MeshError::Parse(format!("bad exponent `{exp}`")))?;
        match name {
            "S" | "s" => m = Some(e),
            "Sigma" | "sigma" | "Σ" => d = Some(e),
            _ => return Err(MeshError::Parse(format!("unknown symbol `{name}`"))),
        }
    }
    Ok((m.unwrap_or(0), d.unwrap_or(0)))
}

pub fn orbit(delta: &str, f_word: Option<&str>, fs: FieldSpec) -> Result<OrbitReport, MeshError> {
    let datum = parse_family_rank(delta)?;
    let exps = f_word.map(parse_f_word).transpose()?;
    let p: OrbitPresentation = orbit_presentation(&datum, exps, None)?;
    let char2 = fs.characteristic() == 2;
    Ok(OrbitReport {
        schema: SCHEMA_VERSION,
        input: format!(
            "{delta} / {}",
            f_word.map(str::to_string).unwrap_or_else(|| "(ambient)".into())
        ),
        characteristic: fs.characteristic(),
        lattice: p.ambient.lattice,
        relations: p.relations.clone(),
        cy_d: p.solve_cy(char2),
        sigma_period: p.solve_sigma_period(char2),
        upper_bound_certified: true,
    })
}

pub fn crosscheck(
    families: &str,
    m_max: u64,
    chars: &str,
    dmax: Option<usize>,
) -> Result<CrosscheckReport, MeshError> {
    let data: Vec<DynkinDatum> = families
        .split(',')
        .map(parse_family_rank)
        .collect::<Result<_, _>>()?;
    let charspecs: Vec<FieldSpec> = chars
        .split(',')
        .map(|c| c.trim().parse())
        .collect::<Result<_, _>>()?;
    let mut cells = Vec::new();
    for &d in &data {
        if !d.is_simply_laced() {
            return Err(MeshError::InvalidDynkin(format!(
                "crosscheck runs on simply laced classes, got {}{}",
                d.family, d.rank
            )));
        }
        for m in 1..=m_max {
            for &fs in &charspecs {
                cells.push((d, m, fs));
            }
        }
    }
    // each cell is pure; fan out across worker threads
    let rows: Vec<CrosscheckRow> = std::thread::scope(|scope| {
        let handles: Vec<_> = cells
            .iter()
            .map(|&(d, m, fs)| scope.spawn(move || crosscheck_cell(d, m, fs, dmax)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mismatches = rows.iter().filter(|r| !r.matches && !r.inconclusive).count();
    let inconclusive = rows.iter().filter(|r| r.inconclusive).count();
    Ok(CrosscheckReport {
        schema: SCHEMA_VERSION,
        rows,
        mismatches,
        inconclusive,
    })
}

fn crosscheck_cell(d: DynkinDatum, m: u64, fs: FieldSpec, dmax: Option<usize>) -> CrosscheckRow {
    let predicted = oracle::cy_mfold(&d, m, fs).expect("valid grid cell");
    let pred_str = match predicted.d {
        Some(x) => format!("d={x}"),
        None => "none".to_string(),
    };
    let spec = QuotientSpec::new(d, m as usize, RhoKind::None).expect("valid spec");
    let q = build_quotient_quiver(&spec).expect("valid quiver");
    let outcome = with_field!(fs, |f| {
        let alg = mesh_algebra(&q, f, spec.base.h_delta as usize).expect("finite dimensional");
        let d_max =
            dmax.unwrap_or_else(|| mesharc_core::resolution::default_d_max(alg.n_vertices()));
        let data = twist_data(&alg).expect("twist data");
        (min_cy_exponent_direct(&alg, &data, d_max), d_max)
    });
    let (direct, d_max) = outcome;
    let (comp_str, matches, inconclusive) = match direct {
        CyDirect::Found { d: found } => (
            format!("d={found}"),
            predicted.d == Some(found as u64),
            false,
        ),
        CyDirect::NoneUpTo { .. } => match predicted.d {
            None => ("none".to_string(), true, false),
            // oracle predicts a value beyond the sweep bound: bound
            // semantics make this inconclusive, not a mismatch
            Some(x) if x as usize > d_max => (format!("none<= {d_max}"), false, true),
            Some(_) => (format!("none<={d_max}"), false, false),
        },
        CyDirect::Inconclusive { at_d } => (format!("inconclusive@{at_d}"), false, true),
    };
    CrosscheckRow {
        family: d.family.to_string(),
        rank: d.rank,
        m,
        characteristic: fs.characteristic(),
        predicted: pred_str,
        computed: comp_str,
        matches,
        inconclusive,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Exponent formula vs congruence for the odd-chain torsion-2 types.
    T2a,
    /// Orbit solver vs closed forms for torsion-2 odd-chain dimensions.
    OrbitT2a,
    /// Orbit solver vs closed-form periods (fork and exceptional types).
    OrbitPeriods,
    /// Characteristic-independence of the torsion-1 status.
    T1Chars,
}

pub fn sweep(suite: Suite, max: u64) -> Result<(Vec<String>, usize), MeshError> {
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    match suite {
        Suite::T2a => {
            for n in (1..=max).step_by(2) {
                for s in (1..=max).step_by(2) {
                    if oracle::gcd(n + 1, s) != 1 {
                        continue;
                    }
                    match oracle::cy_t2_a(n, s, FieldSpec::Rational) {
                        Ok(v) => rows.push(format!("n={n} s={s} d={:?} ok", v.d.unwrap())),
                        Err(e) => {
                            mismatches += 1;
                            rows.push(format!("n={n} s={s} DISAGREE: {e}"));
                        }
                    }
                }
            }
        }
        Suite::OrbitT2a => {
            for n in 1..=max {
                for s in 1..=max {
                    if n % 2 != s % 2 || oracle::gcd(n + 1, s) != 1 {
                        continue;
                    }
                    let rank = 2 * n as usize + 1;
                    let datum = build_dynkin(DynkinFamily::A, rank)?;
                    let p = orbit_presentation(
                        &datum,
                        Some(mesharc_core::orbit::realizations::t2_a(n, s)),
                        None,
                    )?;
                    let solver = p.solve_cy(false);
                    let formula = oracle::cy_t2_a(n, s, FieldSpec::Rational)?.d;
                    let ok = solver == formula;
                    if !ok {
                        mismatches += 1;
                    }
                    rows.push(format!(
                        "n={n} s={s} solver={solver:?} formula={formula:?} {}",
                        if ok { "ok" } else { "DISAGREE" }
                    ));
                }
            }
        }
        Suite::OrbitPeriods => {
            for n in (5..=max).step_by(2) {
                for s in (2..=max).step_by(2) {
                    let datum = build_dynkin(DynkinFamily::D, n as usize)?;
                    let p = orbit_presentation(
                        &datum,
                        Some(mesharc_core::orbit::realizations::t2_d_odd(n, s)),
                        None,
                    )?;
                    for fs in [FieldSpec::Rational, FieldSpec::Prime(2)] {
                        let solver = p.solve_sigma_period(fs.characteristic() == 2);
                        let formula = oracle::cy_t2_d(n, s, fs)?.period;
                        let ok = solver == formula;
                        if !ok {
                            mismatches += 1;
                        }
                        rows.push(format!(
                            "fork n={n} s={s} char={fs} solver={solver:?} formula={formula:?} {}",
                            if ok { "ok" } else { "DISAGREE" }
                        ));
                    }
                }
            }
            let e6 = build_dynkin(DynkinFamily::E, 6)?;
            for s in (2..=max).step_by(2) {
                let p = orbit_presentation(
                    &e6,
                    Some(mesharc_core::orbit::realizations::t2_e6(s)),
                    None,
                )?;
                for fs in [FieldSpec::Rational, FieldSpec::Prime(2)] {
                    let solver = p.solve_sigma_period(fs.characteristic() == 2);
                    let formula = oracle::cy_t2_e6(s, fs)?.period;
                    let ok = solver == formula;
                    if !ok {
                        mismatches += 1;
                    }
                    rows.push(format!(
                        "e6 s={s} char={fs} solver={solver:?} formula={formula:?} {}",
                        if ok { "ok" } else { "DISAGREE" }
                    ));
                }
            }
        }
        Suite::T1Chars => {
            for (fam, lo, hi) in [
                (DynkinFamily::A, 1usize, 8usize),
                (DynkinFamily::D, 4, 8),
                (DynkinFamily::E, 6, 8),
            ] {
                for rank in lo..=hi {
                    let d = build_dynkin(fam, rank)?;
                    for m in 1..=max {
                        let st: Vec<_> = [0u64, 2, 3, 5]
                            .iter()
                            .map(|&c| {
                                let fs = FieldSpec::new(c).unwrap();
                                oracle::cy_mfold(&d, m, fs).map(|v| v.status)
                            })
                            .collect::<Result<_, _>>()?;
                        let ok = st.windows(2).all(|w| w[0] == w[1]);
                        if !ok {
                            mismatches += 1;
                        }
                        rows.push(format!(
                            "{fam}{rank} m={m} statuses={st:?} {}",
                            if ok { "ok" } else { "DISAGREE" }
                        ));
                    }
                }
            }
        }
    }
    Ok((rows, mismatches))
}
