//! One function per subcommand. Each builds a [`Report`] whose `config`,
//! `inputs` and `results` depend only on the resolved parameters and the
//! input file contents, never on paths or cache state.

use std::fs;
use std::path::Path;

use mixquiver::arith::{is_prime, lcm, minimal_extension_degree};
use mixquiver::arseq::{
    fixed_points_of_projectives, koszul_strand, middle_term_decomposition, middle_term_graded_check, tau_is_det_twist,
};
use mixquiver::invariants::{
    check_generation, compute_l0, cyclic_an_generators, ideal_containment, invariant_basis, klein_presentation_with,
    reynolds_rank, semi_invariant_basis, Exponents,
};
use mixquiver::{
    character_table, export_dot, hensel_lift_root, lift_group, primitive_root_of_unity, pseudo_reflections,
    quiver_equals_mckay, reduce_group, CharacterTable, CyclotomicMatrixSpec, DvrRing, FqField, GroupError,
    InvariantError, MatrixGroup, McKayGraph,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cache::{Cache, CacheKey};
use crate::error::CliError;
use crate::report::{Check, Report};
use crate::spec::{parse_group_spec, GroupSpecFile};
use crate::{GroupArgs, RingArgs};

const DEFAULT_PRECISION: u32 = 8;
const MAX_EXTENSION_DEGREE: usize = 64;
const AUTO_PRIME_BOUND: u64 = 1000;

/// A group spec lifted to `GL_2(V_N)` with the parameters actually used.
struct Resolved {
    spec_sha256: String,
    ring: DvrRing,
    lifted: MatrixGroup<DvrRing>,
}

impl Resolved {
    fn p(&self) -> u64 {
        self.ring.p()
    }

    fn m(&self) -> usize {
        self.ring.degree()
    }

    fn precision(&self) -> u32 {
        self.ring.precision()
    }

    fn config(&self, args: &RingArgs) -> Value {
        json!({"p": self.p(), "m": self.m(), "N": self.precision(), "order_cap": args.order_cap})
    }

    fn report(&self, command: &str, args: &RingArgs, extra: Value) -> Report {
        let mut config = self.config(args);
        if let (Value::Object(c), Value::Object(e)) = (&mut config, extra) {
            c.extend(e);
        }
        let mut report = Report::new(command, config);
        report.inputs.insert("group_spec_sha256".into(), self.spec_sha256.clone());
        report
    }

    fn field_json(&self) -> Value {
        json!({
            "p": self.p(),
            "m": self.m(),
            "N": self.precision(),
            "residue_modulus": self.ring.residue_field().modulus_poly(),
            "lifted_modulus": self.ring.lifted_modulus(),
        })
    }
}

fn read_spec(path: &Path) -> Result<(GroupSpecFile, String), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let parsed = parse_group_spec(&text)?;
    Ok((parsed, hex::encode(Sha256::digest(text.as_bytes()))))
}

fn lift_at(
    spec: &CyclotomicMatrixSpec,
    p: u64,
    m: Option<usize>,
    precision: u32,
    cap: usize,
) -> Result<(DvrRing, MatrixGroup<DvrRing>), CliError> {
    let e = spec.order_hint;
    let auto_m = || minimal_extension_degree(p, e, MAX_EXTENSION_DEGREE).unwrap_or(1);
    let ring = DvrRing::new(p, m.unwrap_or_else(auto_m), precision)?;
    let lifted = lift_group(spec, &ring, cap)?;
    if m.is_some() {
        return Ok((ring, lifted));
    }
    // The character table needs roots of unity of order exp(G), which may
    // exceed the group spec's zeta order.
    let needed = lcm(e, lifted.exponent());
    match minimal_extension_degree(p, needed, MAX_EXTENSION_DEGREE) {
        Some(m2) if m2 != ring.degree() => {
            let ring = DvrRing::new(p, m2, precision)?;
            let lifted = lift_group(spec, &ring, cap)?;
            Ok((ring, lifted))
        }
        _ => Ok((ring, lifted)),
    }
}

/// Flag, then file, then automatic choice, for each of `p`, `m`, `N`.
fn resolve(args: &GroupArgs) -> Result<Resolved, CliError> {
    let (file, spec_sha256) = read_spec(&args.group_spec)?;
    let ring_args = &args.ring;
    let precision = ring_args.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION);
    if precision == 0 {
        return Err(CliError::Input("precision must be at least 1".into()));
    }
    let m = match ring_args.m.or(file.m) {
        Some(0) | None => None,
        Some(m) => Some(m),
    };
    let spec = &file.spec;
    let (ring, lifted) = match ring_args.p.or(file.p) {
        Some(p) => lift_at(spec, p, m, precision, ring_args.order_cap)?,
        None => {
            let mut found = None;
            for p in (3..AUTO_PRIME_BOUND).step_by(2).filter(|&p| is_prime(p) && spec.order_hint % p != 0) {
                match lift_at(spec, p, m, precision, ring_args.order_cap) {
                    Err(CliError::Core { ref kind, .. }) if kind == "CharacteristicDividesOrder" => continue,
                    Ok((_, lifted)) if !lifted.is_nonmodular() => continue,
                    other => {
                        found = Some(other?);
                        break;
                    }
                }
            }
            found.ok_or_else(|| CliError::Input(format!("no odd prime below {AUTO_PRIME_BOUND} is usable")))?
        }
    };
    Ok(Resolved { spec_sha256, ring, lifted })
}

fn reduce(lifted: &MatrixGroup<DvrRing>) -> Result<MatrixGroup<FqField>, CliError> {
    Ok(reduce_group(lifted)?)
}

fn table_for(group: &MatrixGroup<FqField>, r: &Resolved, cache: &Cache) -> Result<CharacterTable, CliError> {
    let fp = group.fingerprint();
    let key =
        CacheKey { kind: "character-table", group_fingerprint: &fp, p: r.p(), m: r.m(), precision: 1, degree_cap: 0 };
    if let Some(t) = cache.get::<CharacterTable>(&key) {
        if t.group_fingerprint == fp && t.group_order == group.order() {
            return Ok(t);
        }
    }
    let table = character_table(group)?;
    cache.put(&key, &table);
    Ok(table)
}

fn affine_pattern(graph: &McKayGraph) -> Option<String> {
    let v = graph.num_vertices();
    if v >= 2 && graph.is_affine_a(v - 1) {
        Some(format!("extended A_{}", v - 1))
    } else if graph.is_affine_d4() {
        Some("extended D_4".into())
    } else {
        None
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn lift_group_cmd(args: &GroupArgs) -> Result<Report, CliError> {
    let r = resolve(args)?;
    let g = &r.lifted;
    let mut report = r.report("lift-group", &args.ring, json!({}));
    let coprime = g.is_nonmodular();
    report.checks.push(Check::with_witness(
        "order-coprime-to-p",
        coprime,
        format!("|G| = {}, p = {}", g.order(), r.p()),
    ));
    let mut pseudo = Value::Null;
    if coprime {
        match reduce_group(g) {
            Ok(red) => {
                report.checks.push(Check::new("reduction-injective", red.order() == g.order()));
                pseudo = json!(pseudo_reflections(&red));
            }
            Err(GroupError::InjectivityFailure { first, second }) => {
                report.checks.push(Check::with_witness(
                    "reduction-injective",
                    false,
                    format!("elements {first} and {second} have the same reduction"),
                ));
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        report.checks.push(Check::with_witness("reduction-injective", false, "not checked for a modular group"));
    }
    let ring = g.ring();
    let generators: Vec<String> = g.generator_indices().iter().map(|&i| g.element(i).format(ring)).collect();
    report.results = json!({
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "special": g.is_special(),
        "fingerprint": g.fingerprint(),
        "field": r.field_json(),
        "generators": generators,
        "pseudo_reflections": pseudo,
    });
    Ok(report)
}

pub fn mckay(
    args: &GroupArgs,
    dot: Option<&Path>,
    json_out: Option<&Path>,
    undirected: bool,
    cache: &Cache,
) -> Result<Report, CliError> {
    let r = resolve(args)?;
    let cmp = quiver_equals_mckay(&r.lifted)?;
    let reduced = reduce(&r.lifted)?;
    let fp = reduced.fingerprint();
    let key =
        CacheKey { kind: "character-table", group_fingerprint: &fp, p: r.p(), m: r.m(), precision: 1, degree_cap: 0 };
    cache.put(&key, &cmp.table);

    let graph = &cmp.graph;
    let special = r.lifted.is_special();
    let mut report = r.report("mckay", &args.ring, json!({"undirected": undirected}));
    report.checks.push(Check::new("lifted-arrows-equal-character-arrows", cmp.certificate));
    let violation = graph.column_dimension_violation();
    report.checks.push(Check::with_witness(
        "column-dimension-identity",
        violation.is_none(),
        format!("fails at vertex {}", violation.unwrap_or(0)),
    ));
    if special {
        report.checks.push(Check::new("symmetric", graph.is_symmetric()));
        report.checks.push(Check::new("connected", graph.is_connected()));
    }
    if let Some(path) = dot {
        write_file(path, &export_dot(graph, undirected))?;
    }
    if let Some(path) = json_out {
        let mut s = serde_json::to_string_pretty(&graph.to_json()).expect("graph serializes");
        s.push('\n');
        write_file(path, &s)?;
    }
    report.results = json!({
        "group_order": r.lifted.order(),
        "special": special,
        "dims": graph.dims,
        "arrows": graph.arrows,
        "lifted_arrows": cmp.lifted_arrows,
        "symmetric": graph.is_symmetric(),
        "connected": graph.is_connected(),
        "pattern": affine_pattern(graph),
    });
    Ok(report)
}

/// One degree of the invariants computation; cached per degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct DegreeRow {
    degree: u32,
    dim: usize,
    reynolds_rank: usize,
    basis: Vec<String>,
    semi_invariant_dims: Option<Vec<usize>>,
}

fn degree_row(group: &MatrixGroup<FqField>, table: &CharacterTable, d: u32) -> Result<DegreeRow, CliError> {
    let f = group.ring();
    let basis = invariant_basis(group, d)?;
    let rendered = basis.polys(f, d).iter().map(|p| p.render(f)).collect();
    let semi = if group.is_abelian() {
        Some(
            (0..table.len())
                .map(|i| semi_invariant_basis(group, table, i, d).map(|b| b.dim()))
                .collect::<Result<Vec<_>, InvariantError>>()?,
        )
    } else {
        None
    };
    Ok(DegreeRow {
        degree: d,
        dim: basis.dim(),
        reynolds_rank: reynolds_rank(group, d)?,
        basis: rendered,
        semi_invariant_dims: semi,
    })
}

/// `dim A^G_d` from the character table: the average over `G` of the trace
/// of `g` on degree-`d` forms, summed as cyclotomic integers.
fn molien_dimension(table: &CharacterTable, d: u32) -> Option<usize> {
    let cyc = table.cyclotomic();
    let mut acc = cyc.zero();
    for (k, &[j1, j2]) in table.std_eigen.iter().enumerate() {
        let size = table.classes.sizes[k] as i64;
        for a in 0..=d as u64 {
            let power = cyc.root_power((j1 * a + j2 * (d as u64 - a)) as i64);
            acc = cyc.add(&acc, &cyc.scale(&power, size));
        }
    }
    let total = cyc.as_integer(&acc)?;
    let n = table.group_order as i64;
    (total >= 0 && total % n == 0).then_some((total / n) as usize)
}

pub fn invariants(args: &GroupArgs, degree_cap: u32, cache: &Cache) -> Result<Report, CliError> {
    let r = resolve(args)?;
    let group = reduce(&r.lifted)?;
    let table = table_for(&group, &r, cache)?;
    let fp = group.fingerprint();
    let mut rows = Vec::new();
    for d in 0..=degree_cap {
        let key = CacheKey {
            kind: "invariants-degree",
            group_fingerprint: &fp,
            p: r.p(),
            m: r.m(),
            precision: 1,
            degree_cap: d,
        };
        let row = match cache.get::<DegreeRow>(&key) {
            Some(row) if row.degree == d => row,
            _ => {
                let row = degree_row(&group, &table, d)?;
                cache.put(&key, &row);
                row
            }
        };
        rows.push(row);
    }

    let mut report = r.report("invariants", &args.ring, json!({"degree_cap": degree_cap}));
    let bad = rows.iter().find(|row| row.dim != row.reynolds_rank);
    report.checks.push(Check::with_witness(
        "kernel-equals-reynolds-rank",
        bad.is_none(),
        bad.map(|row| format!("degree {}: {} vs {}", row.degree, row.dim, row.reynolds_rank)).unwrap_or_default(),
    ));
    let molien: Vec<Option<usize>> = (0..=degree_cap).map(|d| molien_dimension(&table, d)).collect();
    let bad = rows.iter().zip(&molien).find(|(row, m)| **m != Some(row.dim));
    report.checks.push(Check::with_witness(
        "character-average-dimension",
        bad.is_none(),
        bad.map(|(row, m)| format!("degree {}: kernel {}, character average {:?}", row.degree, row.dim, m))
            .unwrap_or_default(),
    ));
    if group.is_abelian() {
        let bad = rows.iter().find(|row| {
            row.semi_invariant_dims.as_ref().map(|s| s.iter().sum::<usize>()) != Some(row.degree as usize + 1)
        });
        report.checks.push(Check::with_witness(
            "semi-invariants-decompose-forms",
            bad.is_none(),
            bad.map(|row| format!("degree {}: {:?}", row.degree, row.semi_invariant_dims)).unwrap_or_default(),
        ));
    } else {
        report.notes.push("semi-invariants are only computed for abelian groups".into());
    }
    report.results = json!({
        "group_order": group.order(),
        "abelian": group.is_abelian(),
        "hilbert_function": rows.iter().map(|row| row.dim).collect::<Vec<_>>(),
        "degrees": rows,
    });
    Ok(report)
}

/// The smallest odd prime not dividing `n + 1`.
fn klein_prime(n: u32) -> u64 {
    (3..).step_by(2).find(|&p| is_prime(p) && !(n as u64 + 1).is_multiple_of(p)).expect("primes are unbounded")
}

fn klein_ring(n: u32, p: Option<u64>, precision: u32) -> Result<DvrRing, CliError> {
    if n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let p = p.unwrap_or_else(|| klein_prime(n));
    if p == 2 || !is_prime(p) || (2 * (n as u64 + 1)).is_multiple_of(p) {
        return Err(CliError::Input(format!("p = {p} must be an odd prime not dividing n + 1 = {}", n + 1)));
    }
    let e = lcm(4, 2 * (n as u64 + 1));
    let m = minimal_extension_degree(p, e, MAX_EXTENSION_DEGREE).ok_or_else(|| {
        CliError::Input(format!("no extension of F_{p} of degree ≤ {MAX_EXTENSION_DEGREE} has the needed roots"))
    })?;
    Ok(DvrRing::new(p, m, precision)?)
}

fn klein_group(n: u32, ring: &DvrRing) -> Result<MatrixGroup<FqField>, CliError> {
    let lifted = lift_group(&CyclotomicMatrixSpec::cyclic_an(n as u64), ring, mixquiver::groups::DEFAULT_ORDER_CAP)?;
    reduce(&lifted)
}

fn twists(n: u32, ring: &DvrRing) -> Result<(mixquiver::DvrScalar, mixquiver::DvrScalar), CliError> {
    let lift = |order: u64| -> Result<mixquiver::DvrScalar, CliError> {
        let z = primitive_root_of_unity(ring.residue_field(), order)?;
        Ok(hensel_lift_root(ring, order, &z)?)
    };
    Ok((lift(4)?, lift(2 * (n as u64 + 1))?))
}

pub fn verify_klein(n: u32, p: Option<u64>, precision: u32, degree_cap: Option<u32>) -> Result<Report, CliError> {
    let ring = klein_ring(n, p, precision)?;
    let cap = degree_cap.unwrap_or(4 * (n + 1));
    let (theta4, theta2n) = twists(n, &ring)?;
    let pres = klein_presentation_with(n, &ring, &theta4, &theta2n, cap)?;
    let group = klein_group(n, &ring)?;
    let field = ring.residue_field();

    let config = json!({"n": n, "p": ring.p(), "m": ring.degree(), "N": ring.precision(), "degree_cap": cap});
    let mut report = Report::new("verify-klein", config);
    report.checks.push(Check::new("relations-hold", pres.all_relations_hold()));

    let mut generation = serde_json::Map::new();
    let v = cyclic_an_generators(field, n, cap);
    let klein = pres.reduced_klein_generators();
    for (name, gens) in [("v1,v2,v3", &v), ("alpha,beta,gamma", &klein)] {
        match check_generation(&group, gens, cap) {
            Ok(rep) => {
                report.checks.push(Check::new(format!("generation-{name}"), true));
                generation.insert(name.into(), json!(rep.dims));
            }
            Err(InvariantError::GenerationGap { degree, expected, found }) => {
                report.checks.push(Check::with_witness(
                    format!("generation-{name}"),
                    false,
                    format!("degree {degree}: {found} of {expected} dimensions"),
                ));
                generation.insert(name.into(), Value::Null);
            }
            Err(e) => return Err(e.into()),
        }
    }

    let xz: [Exponents; 2] = [[1, 0, 0], [0, 0, 1]];
    let x2z2: [Exponents; 2] = [[2, 0, 0], [0, 0, 2]];
    let first = ideal_containment(field, n, n + 1, &xz);
    let second = ideal_containment(field, n, 3 * (n + 1), &x2z2);
    let control = ideal_containment(field, n, 1, &x2z2);
    for (name, res) in
        [("containment-(x,y,z)^(n+1)-in-(x,z)", &first), ("containment-(x,y,z)^(3(n+1))-in-(x^2,z^2)", &second)]
    {
        report.checks.push(Check::with_witness(
            name,
            res.contained && res.orders_agree,
            format!("witness {}", res.witness_text.clone().unwrap_or_default()),
        ));
    }
    report.checks.push(Check::with_witness(
        "negative-control-(x,y,z)-not-in-(x^2,z^2)",
        !control.contained && control.orders_agree,
        "unexpectedly contained",
    ));
    let pseudo = pseudo_reflections(&group);
    report.checks.push(Check::with_witness(
        "pseudo-reflection-free",
        pseudo.is_empty(),
        format!("pseudo-reflections at elements {pseudo:?}"),
    ));

    let generators: Value = pres
        .generators
        .iter()
        .map(|(name, f)| (name.clone(), json!(f.render(&ring))))
        .collect::<serde_json::Map<_, _>>()
        .into();
    report.results = json!({
        "generators": generators,
        "relations": pres.relations,
        "generation": generation,
        "containments": {"first": first, "second": second, "negative_control": control},
        "pseudo_reflections": pseudo.len(),
    });
    report.notes.push(format!("polynomial identities are checked exactly in V_N up to total degree {cap}"));
    report.notes.push("containments are decided in the weighted quotient ring over the residue field".into());
    Ok(report)
}

pub fn l0_bound(n: u32, lmax: u32, p: Option<u64>, degree_cap: Option<u32>) -> Result<Report, CliError> {
    let ring = klein_ring(n, p, DEFAULT_PRECISION)?;
    let cap = degree_cap.unwrap_or_else(|| 16.max(lmax + 2 * (n + 1)));
    let (theta4, theta2n) = twists(n, &ring)?;
    let pres = klein_presentation_with(n, &ring, &theta4, &theta2n, 4 * (n + 1))?;
    let group = klein_group(n, &ring)?;
    let klein = pres.reduced_klein_generators();

    let config = json!({"n": n, "lmax": lmax, "p": ring.p(), "m": ring.degree(), "N": ring.precision(), "degree_cap": cap, "u": ["alpha", "gamma"]});
    let mut report = Report::new("l0-bound", config);
    match compute_l0(&group, &klein[0], &klein[2], lmax, cap) {
        Ok(rep) => {
            report.checks.push(Check::new("l0-found", true));
            report.checks.push(Check::new("stable-at-raised-cap", true));
            report.results = json!(rep);
        }
        Err(InvariantError::NotFound { l_max, cap }) => {
            report.checks.push(Check::with_witness(
                "l0-found",
                false,
                format!("no l ≤ {l_max} works up to degree {cap}"),
            ));
            report.results = json!({"l0": null});
        }
        Err(e) => return Err(e.into()),
    }
    report.notes.push("l0 is certified only for degrees up to the cap; it is an upper bound for the minimum over all systems of parameters".into());
    report.notes.push("whether (alpha, gamma) is an efficient system of parameters is not checked".into());
    Ok(report)
}

pub fn ar_middle(args: &GroupArgs, degree_cap: u32, cache: &Cache) -> Result<Report, CliError> {
    let r = resolve(args)?;
    let group = reduce(&r.lifted)?;
    let table = table_for(&group, &r, cache)?;
    let mut report = r.report("ar-middle", &args.ring, json!({"degree_cap": degree_cap}));
    report.notes.push(
        "strands are computed degree by degree on fixed subspaces of S_(d-2)⊗∧²E → S_(d-1)⊗E → S_d → P_i^G".into(),
    );

    let fixed = fixed_points_of_projectives(&group, &table)?;
    let only_trivial = fixed.iter().enumerate().all(|(i, &v)| v == u8::from(i == table.trivial_index()));
    report.checks.push(Check::with_witness("projective-fixed-points", only_trivial, format!("{fixed:?}")));

    let middles: Vec<_> = (0..table.len()).map(|i| middle_term_decomposition(&table, i)).collect();
    let bad = middles.iter().find(|m| !m.matches_mckay);
    report.checks.push(Check::with_witness(
        "middle-terms-equal-mckay-columns",
        bad.is_none(),
        bad.map(|m| format!("vertex {}", m.char_index)).unwrap_or_default(),
    ));

    let tau = tau_is_det_twist(&table)?;
    let special = group.is_special();
    report.checks.push(Check::with_witness(
        "tau-trivial-iff-special",
        tau.det_trivial == special && (!special || tau.fixes_every_index()),
        format!("det trivial {}, special {special}", tau.det_trivial),
    ));

    let mut strands = Value::Null;
    let mut graded = Value::Null;
    if group.is_abelian() {
        let mut summaries = Vec::new();
        let mut bad = None;
        for i in 0..table.len() {
            for d in 0..=degree_cap {
                let s = koszul_strand(&group, &table, i, d)?;
                let expected = [0, 0, usize::from(i == table.trivial_index() && d == 0)];
                if s.homology != expected && bad.is_none() {
                    bad = Some(format!("i = {i}, d = {d}: homology {:?}", s.homology));
                }
                summaries.push(s.summary());
            }
        }
        report.checks.push(Check::with_witness(
            "strands-exact-except-trivial-top",
            bad.is_none(),
            bad.unwrap_or_default(),
        ));
        let checks = (0..table.len())
            .map(|i| middle_term_graded_check(&group, &table, i, degree_cap))
            .collect::<Result<Vec<_>, _>>()?;
        let bad = checks.iter().find(|c| !c.agrees);
        report.checks.push(Check::with_witness(
            "graded-middle-dimensions",
            bad.is_none(),
            bad.map(|c| format!("vertex {}", c.char_index)).unwrap_or_default(),
        ));
        strands = json!(summaries);
        graded = json!(checks);
    } else {
        report.notes.push("Koszul strands are only computed for abelian groups".into());
    }

    report.results = json!({
        "group_order": group.order(),
        "abelian": group.is_abelian(),
        "special": special,
        "projective_fixed_points": fixed,
        "middle_terms": middles,
        "tau": tau,
        "strands": strands,
        "graded_middle": graded,
    });
    Ok(report)
}
