use blockade_core::extcalc::{
    ext_direct_sum, ext_general_simple, ext_onedim_abelian, ext_reductive_simple, ext_trivial_vs_simple,
    keythmext_case3_general, Dim, GeneralSimpleDescriptor, Label, ReductiveSimpleDescriptor,
};
use blockade_core::repthy::{
    adjoint_multiplicity_by_decomposition, freudenthal_multiplicities, prv_adjoint_multiplicity,
    tensor_decompose_with, weyl_dimension,
};
use blockade_core::sweep::ext_matrix;
use blockade_core::twistblocks::{
    ext_dim, linkage_chain_in_window, margaux_block, EvalModuleDescriptor, GaussianRational, MargauxPoint,
    OrbitSpace, OrbitSpaceSpec,
};
use blockade_core::{RootSystem, Strategy, Weight};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, ExtcalcCommand, PairOrBatch, SystemArgs};
use crate::pretty::{fields, table};
use crate::{blocks_report, CliError, Inputs, Outcome};

/// One entry of a `margaux --modules` file.
#[derive(Deserialize)]
struct MargauxModule {
    a: GaussianRational,
    b: GaussianRational,
    m: u64,
}

fn system(s: &SystemArgs) -> Result<RootSystem, CliError> {
    Ok(RootSystem::new(s.letter, s.rank)?)
}

fn orbit_space(inputs: &mut Inputs, path: &std::path::Path) -> Result<OrbitSpace, CliError> {
    let spec: OrbitSpaceSpec = inputs.load(path)?;
    Ok(OrbitSpace::from_spec(&spec)?)
}

/// Numbers that fit in `u64` are emitted as JSON numbers, larger ones as
/// decimal strings.
fn big(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn dim_value(d: Dim) -> Value {
    match d {
        Dim::Finite(n) => json!(n),
        Dim::Infinite => json!("infinite"),
    }
}

fn descriptor_text(d: &EvalModuleDescriptor) -> String {
    if d.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = d.assignments().iter().map(|(p, w)| format!("{p}↦{w}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub(crate) fn execute(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    match &cli.command {
        Command::Roots { system: s } => roots(&system(s)?),
        Command::Dim { system: s, lam } => {
            let rs = system(s)?;
            let d = weyl_dimension(&rs, lam)?;
            Ok(Outcome {
                result: json!({"system": rs.name(), "lambda": lam, "dim": big(&d)}),
                table: fields(&[("system", rs.name()), ("lambda", lam.to_string()), ("dim", d.to_string())]),
            })
        }
        Command::Tensor { system: s, lam, mu } => {
            let rs = system(s)?;
            let t = tensor_decompose_with(&rs, lam, mu, strategy)?;
            let mut rows = Vec::new();
            let mut components = Vec::new();
            for (w, &m) in t.iter() {
                let d = weyl_dimension(&rs, w)?;
                rows.push(vec![w.to_string(), m.to_string(), d.to_string()]);
                components.push(json!({"weight": w, "multiplicity": m, "dim": big(&d)}));
            }
            let total = weyl_dimension(&rs, lam)? * weyl_dimension(&rs, mu)?;
            Ok(Outcome {
                result: json!({
                    "system": rs.name(), "lambda": lam, "mu": mu,
                    "components": components, "total_dim": big(&total),
                }),
                table: table(&["weight", "mult", "dim"], &rows) + &format!("total dim {total}\n"),
            })
        }
        Command::Freudenthal { system: s, lam, dominant } => {
            let rs = system(s)?;
            let diagram = freudenthal_multiplicities(&rs, lam)?;
            let listed: Vec<_> = diagram
                .iter()
                .filter(|(w, _)| !*dominant || w.is_dominant())
                .collect();
            Ok(Outcome {
                result: json!({
                    "system": rs.name(), "lambda": lam,
                    "dim": diagram.total(),
                    "weights": listed.iter().map(|(w, m)| json!({"weight": w, "multiplicity": m})).collect::<Vec<_>>(),
                }),
                table: table(
                    &["weight", "mult"],
                    &listed.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]).collect::<Vec<_>>(),
                ),
            })
        }
        Command::Prv { system: s, lam, mu, oracle } => {
            let rs = system(s)?;
            let c = prv_adjoint_multiplicity(&rs, lam, mu)?;
            let mut result = json!({"c": c});
            let mut pairs = vec![("c", c.to_string())];
            if *oracle {
                let o = adjoint_multiplicity_by_decomposition(&rs, lam, mu)?;
                result["oracle"] = json!(o);
                pairs.push(("oracle", o.to_string()));
            }
            Ok(Outcome {
                result,
                table: fields(&pairs),
            })
        }
        Command::Ext { system: s, orbits, pair } => {
            let rs = system(s)?;
            let os = orbit_space(inputs, orbits)?;
            ext(&rs, &os, pair, inputs, strategy)
        }
        Command::Blocks { system: s, orbits, modules } => {
            let rs = system(s)?;
            let os = orbit_space(inputs, orbits)?;
            let modules: Vec<EvalModuleDescriptor> = inputs.load(modules)?;
            let groups = blocks_report(&rs, &os, &modules, strategy)?;
            let rows = groups
                .iter()
                .map(|g| {
                    let chi: Vec<String> = g
                        .character
                        .assignments()
                        .iter()
                        .map(|(p, c)| format!("{p}↦{c}"))
                        .collect();
                    let members: Vec<String> = g.members.iter().map(|i| i.to_string()).collect();
                    vec![format!("{{{}}}", chi.join(", ")), members.join(" ")]
                })
                .collect::<Vec<_>>();
            Ok(Outcome {
                result: json!({"blocks": groups}),
                table: table(&["character", "members"], &rows),
            })
        }
        Command::Chain { system: s, orbits, e, f, bound, window } => {
            let rs = system(s)?;
            let os = orbit_space(inputs, orbits)?;
            let e: EvalModuleDescriptor = inputs.load(e)?;
            let f: EvalModuleDescriptor = inputs.load(f)?;
            let extra: Vec<&str> = window.iter().map(String::as_str).collect();
            let chain = linkage_chain_in_window(&rs, &os, &e, &f, *bound, &extra)?;
            let table = match &chain {
                Some(c) => c.iter().map(|d| descriptor_text(d) + "\n").collect(),
                None => "no chain\n".to_string(),
            };
            Ok(Outcome {
                result: json!({"linked": chain.is_some(), "chain": chain}),
                table,
            })
        }
        Command::Margaux { modules } => {
            let modules: Vec<MargauxModule> = inputs.load(modules)?;
            let pairs: Vec<(MargauxPoint, u64)> = modules
                .into_iter()
                .map(|m| (MargauxPoint::new(m.a, m.b), m.m))
                .collect();
            let block = margaux_block(&pairs)?;
            let rows = block
                .entries()
                .iter()
                .map(|e| vec![e.a.to_string(), e.b.to_string(), e.m.to_string()])
                .collect::<Vec<_>>();
            Ok(Outcome {
                result: json!({"block": block}),
                table: table(&["a", "b", "m"], &rows),
            })
        }
        Command::Extcalc { rule } => extcalc(rule, inputs),
    }
}

fn roots(rs: &RootSystem) -> Result<Outcome, CliError> {
    let roots: Vec<&[i64]> = rs.positive_roots().iter().map(|r| r.coords()).collect();
    let result = json!({
        "system": rs.name(),
        "rank": rs.rank(),
        "cartan": rs.cartan(),
        "cartan_determinant": rs.cartan_determinant(),
        "positive_roots": roots,
        "num_positive_roots": roots.len(),
        "highest_root": rs.highest_root().coords(),
        "fundamental_group": {
            "shape": rs.fundamental_group_shape(),
            "order": rs.fundamental_group_order(),
        },
    });
    let rows: Vec<Vec<String>> = rs
        .positive_roots()
        .iter()
        .map(|r| vec![Weight::new(r.coords().to_vec()).to_string(), r.height().to_string()])
        .collect();
    let head = fields(&[
        ("system", rs.name()),
        ("positive roots", roots.len().to_string()),
        ("|P/Q|", rs.fundamental_group_order().to_string()),
        ("P/Q factors", format!("{:?}", rs.fundamental_group_shape()).replace(' ', "")),
    ]);
    Ok(Outcome {
        result,
        table: head + "\n" + &table(&["root", "height"], &rows),
    })
}

fn ext(
    rs: &RootSystem,
    os: &OrbitSpace,
    pair: &PairOrBatch,
    inputs: &mut Inputs,
    strategy: Strategy,
) -> Result<Outcome, CliError> {
    if let Some(path) = &pair.modules {
        let modules: Vec<EvalModuleDescriptor> = inputs.load(path)?;
        let matrix = ext_matrix(rs, os, &modules, strategy)?;
        let headers: Vec<String> = (0..modules.len()).map(|j| j.to_string()).collect();
        let mut header_refs = vec![""];
        header_refs.extend(headers.iter().map(String::as_str));
        let rows: Vec<Vec<String>> = matrix
            .iter()
            .enumerate()
            .map(|(i, row)| std::iter::once(i.to_string()).chain(row.iter().map(u64::to_string)).collect())
            .collect();
        return Ok(Outcome {
            result: json!({"matrix": matrix}),
            table: table(&header_refs, &rows),
        });
    }
    let (Some(e), Some(f)) = (&pair.e, &pair.f) else {
        unreachable!("clap requires --e with --f or --modules")
    };
    let e: EvalModuleDescriptor = inputs.load(e)?;
    let f: EvalModuleDescriptor = inputs.load(f)?;
    let d = ext_dim(rs, os, &e, &f)?;
    Ok(Outcome {
        result: json!({"dim": d}),
        table: fields(&[("dim", d.to_string())]),
    })
}

fn extcalc(rule: &ExtcalcCommand, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let d = match rule {
        ExtcalcCommand::Abelian { dim_z, lam, mu } => {
            dim_value(ext_onedim_abelian(*dim_z, &Label::new(lam.as_str()), &Label::new(mu.as_str())))
        }
        ExtcalcCommand::DirectSum {
            first_iso,
            second_iso,
            ext_first,
            ext_second,
        } => json!(ext_direct_sum(*first_iso, *second_iso, *ext_first, *ext_second)),
        ExtcalcCommand::Reductive {
            system: s,
            dim_z,
            a_central,
            a_weight,
            b_central,
            b_weight,
        } => {
            let rs = system(s)?;
            let a = ReductiveSimpleDescriptor::new(a_central.as_str(), a_weight.clone());
            let b = ReductiveSimpleDescriptor::new(b_central.as_str(), b_weight.clone());
            json!(ext_reductive_simple(*dim_z, &rs, &a, &b)?)
        }
        ExtcalcCommand::Trivial { dim_z, nontrivial } => json!(ext_trivial_vs_simple(*dim_z, *nontrivial)),
        ExtcalcCommand::General { system: s, orbits, a, b } => {
            let rs = system(s)?;
            let os = orbit_space(inputs, orbits)?;
            let a: GeneralSimpleDescriptor = inputs.load(a)?;
            let b: GeneralSimpleDescriptor = inputs.load(b)?;
            json!(ext_general_simple(&rs, &os, &a, &b)?)
        }
        ExtcalcCommand::Case3 { ext, r, dim_quot } => json!(keythmext_case3_general(ext, *r, *dim_quot)?),
    };
    Ok(Outcome {
        table: fields(&[("dim", d.to_string().trim_matches('"').to_string())]),
        result: json!({"dim": d}),
    })
}
