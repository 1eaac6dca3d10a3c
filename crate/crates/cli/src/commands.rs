use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use vfree::alphabet::{Alphabet, Word};
use vfree::backend::{GroupSource, SolverRegistry};
use vfree::bounds::{bounds_for_grammar, bounds_for_presentation};
use vfree::cayley::{
    build_ball, check_triangulation, component_cuts, cut_boundary, search_triangulation,
    triangulate_tree_sequence, PrefixCut,
};
use vfree::files::{
    load_catalog_file, load_gog, load_grammar_file, load_group, load_hom, load_nfa,
    load_presentation,
};
use vfree::gog::GraphOfGroups;
use vfree::lang::rational_member;
use vfree::slide::{apply_slide, enumerate_slides, iso_decide, IsoVerdict, SlideMove};
use vfree::synth::{synthesize, SynthBudget, SynthError};
use vfree::verify::verify;
use vfree::vfpres::VfPresentation;

use crate::{CayleyCmd, Cli, Command, GogCmd, GrammarCmd, SlideCmd, SynthArgs};

pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

fn yes_no(yes: bool, text: impl Into<String>, json: Value) -> Outcome {
    Outcome {
        code: if yes { 0 } else { 1 },
        text: text.into(),
        json,
    }
}

fn ok(text: impl Into<String>, json: Value) -> Outcome {
    Outcome {
        code: 0,
        text: text.into(),
        json,
    }
}

/// Words are space-separated letter names; `1` or an empty string is the
/// empty word.
fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    let t = text.trim();
    if t.is_empty() || t == "1" {
        return Ok(Vec::new());
    }
    Ok(alphabet.parse_word(t)?)
}

fn parse_gog_word(g: &GraphOfGroups, text: &str) -> Result<Word> {
    let t = text.trim();
    if t.is_empty() || t == "1" {
        return Ok(Vec::new());
    }
    Ok(g.parse_word(t)?)
}

fn render(alphabet: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        alphabet.render(w)
    }
}

fn presentation(path: &Path) -> Result<VfPresentation> {
    Ok(load_presentation(path)?)
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Validate { group } => validate(group),
        Command::Nf { group, word } => {
            let p = presentation(group)?;
            let nf = p.normal_form(&parse_word(p.sigma(), word)?);
            let text = p.render_nf(&nf);
            let free = render(p.sigma(), &nf.free_part);
            let rep = p.representatives()[nf.rep].clone();
            Ok(ok(
                text.clone(),
                json!({ "normal_form": text, "free_part": free, "rep": rep }),
            ))
        }
        Command::Wp {
            group,
            word,
            solver,
        } => wp(group, word, solver.as_deref(), seed),
        Command::Solvers => {
            let reg = SolverRegistry::default();
            let names = reg.names();
            Ok(ok(names.join("\n"), json!({ "solvers": names })))
        }
        Command::Size { group } => {
            let g = load_group(group)?;
            let size = match &g {
                GroupSource::Presentation(p) => p.size(),
                GroupSource::Grammar(gr) => gr.grammar().size() as u64,
            };
            Ok(ok(
                size.to_string(),
                json!({ "kind": g.backend().kind(), "size": size }),
            ))
        }
        Command::Grammar(cmd) => grammar(cmd),
        Command::Member { wp, nfa, word } => {
            let g = load_group(wp)?;
            let b = g.backend();
            let n = load_nfa(nfa, b.sigma())?;
            let w = parse_word(b.sigma(), word)?;
            let yes = rational_member(&b.wp_pda(), &b.involution(), &w, &n)?;
            let text = if yes { "member" } else { "not a member" };
            Ok(yes_no(yes, text, json!({ "member": yes })))
        }
        Command::Gog(cmd) => gog(cmd),
        Command::Verify { group, gog, hom } => {
            let g = load_group(group)?;
            let gg = load_gog(gog)?;
            let h = load_hom(hom, &gg, g.backend().sigma())?;
            let v = verify(&gg, &h, g.backend());
            let text = match v.failed_stage {
                None => "isomorphism".to_string(),
                Some(stage) => format!("not an isomorphism: {stage} check failed: {}", v.detail),
            };
            Ok(yes_no(v.isomorphism, text, serde_json::to_value(&v)?))
        }
        Command::Slide(cmd) => slide(cmd),
        Command::Iso {
            gog1,
            gog2,
            max_depth,
        } => {
            let (g1, g2) = (load_gog(gog1)?, load_gog(gog2)?);
            let (v, stats) = iso_decide(&g1, &g2, *max_depth)?;
            let (code, text) = match &v {
                IsoVerdict::Iso { moves } => {
                    let mut t = format!("iso ({} moves)\n", moves.len());
                    for m in moves {
                        let _ = writeln!(t, "  {m}");
                    }
                    (0, t)
                }
                IsoVerdict::NotIso { reason } => (1, format!("not iso: {reason}")),
                IsoVerdict::Inconclusive { depth, states } => (
                    3,
                    format!("inconclusive: depth bound {depth} reached after {states} states"),
                ),
            };
            let doc = json!({ "result": v, "stats": stats });
            Ok(Outcome {
                code,
                text,
                json: doc,
            })
        }
        Command::Synth(args) => synth(args),
        Command::Bounds { group } => {
            let b = match load_group(group)? {
                GroupSource::Presentation(p) => bounds_for_presentation(&p),
                GroupSource::Grammar(g) => bounds_for_grammar(g.cnf())?,
            };
            Ok(ok(b.to_string(), serde_json::to_value(&b)?))
        }
        Command::Cayley(CayleyCmd::Ball { group, r, dot }) => {
            let p = presentation(group)?;
            let ball = build_ball(&p, *r, cli.cap)?;
            if let Some(path) = dot {
                std::fs::write(path, ball.to_dot(&p))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let names: Vec<String> = ball.vertices.iter().map(|v| p.render_nf(v)).collect();
            let text = format!(
                "{} vertices, {} directed edges",
                ball.len(),
                ball.num_edges()
            );
            let doc = json!({
                "radius": r,
                "vertices": names,
                "distances": ball.dist,
                "edges": ball.num_edges(),
            });
            Ok(ok(text, doc))
        }
        Command::Cut { group, prefix, r } => {
            let p = presentation(group)?;
            let c = PrefixCut::new(&p, parse_word(p.sigma(), prefix)?)?;
            let b = cut_boundary(&p, &c, *r, cli.cap)?;
            let ball = build_ball(&p, *r, cli.cap)?;
            let name = |v: usize| p.render_nf(&ball.vertices[v]);
            let edges: Vec<Value> = b
                .edges
                .iter()
                .map(|&(u, a, v)| json!([name(u), p.sigma().name(a), name(v)]))
                .collect();
            let mut text = format!("weight {}, diam(beta) {}\n", b.weight, b.diam_beta);
            for &(u, a, v) in &b.edges {
                let _ = writeln!(text, "  {} --{}--> {}", name(u), p.sigma().name(a), name(v));
            }
            let doc = json!({
                "weight": b.weight,
                "edges": edges,
                "inner_boundary": b.inner.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                "beta": b.beta.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                "diam_beta": b.diam_beta,
            });
            Ok(ok(text, doc))
        }
        Command::Components { group, r, probe } => {
            let p = presentation(group)?;
            let (ball, comps) = component_cuts(&p, *r, *probe, cli.cap)?;
            let mut text = format!("{} components\n", comps.len());
            let mut docs = Vec::new();
            for c in &comps {
                let boundary: Vec<String> = c
                    .boundary
                    .iter()
                    .map(|&v| p.render_nf(&ball.vertices[v]))
                    .collect();
                let _ = writeln!(
                    text,
                    "  {} vertices{}, boundary {}, diam {}",
                    c.vertices.len(),
                    if c.unbounded {
                        " (reaches the probe sphere)"
                    } else {
                        ""
                    },
                    boundary.len(),
                    c.diam_boundary
                );
                docs.push(json!({
                    "size": c.vertices.len(),
                    "unbounded": c.unbounded,
                    "boundary": boundary,
                    "diam_boundary": c.diam_boundary,
                }));
            }
            Ok(ok(text, json!({ "components": docs })))
        }
        Command::Triangulate {
            group,
            seq,
            k,
            search,
        } => {
            let p = presentation(group)?;
            let words = seq
                .split(',')
                .map(|s| parse_word(p.sigma(), s))
                .collect::<Result<Vec<_>>>()?;
            let radius = words.iter().map(Vec::len).max().unwrap_or(0) + k;
            let ball = build_ball(&p, radius, cli.cap)?;
            let chords = if *search {
                search_triangulation(&p, &ball, &words, *k)?
            } else {
                Some(triangulate_tree_sequence(&p, &ball, &words, *k)?)
            };
            let Some(chords) = chords else {
                return Ok(yes_no(false, "no triangulation", json!({ "chords": null })));
            };
            let valid = check_triangulation(&p, &ball, &words, &chords, *k)?;
            let mut text = format!("{} chords, valid: {valid}\n", chords.len());
            for (a, b) in &chords {
                let _ = writeln!(text, "  {a} - {b}");
            }
            Ok(yes_no(
                valid,
                text,
                json!({ "chords": chords, "valid": valid }),
            ))
        }
    }
}

fn validate(path: &Path) -> Result<Outcome> {
    let g = load_group(path)?;
    let b = g.backend();
    let doc = json!({ "valid": true, "kind": b.kind(), "sigma": b.sigma().names() });
    let text = format!("valid {} over {}", b.kind(), b.sigma().names().join(" "));
    Ok(ok(text, doc))
}

fn wp(path: &Path, word: &str, solver: Option<&str>, seed: u64) -> Result<Outcome> {
    let g = load_group(path)?;
    let w = parse_word(g.backend().sigma(), word)?;
    let reg = SolverRegistry::default();
    let s = match solver {
        Some(name) => reg
            .get(name, seed)
            .ok_or_else(|| anyhow!("unknown solver `{name}`; known: {}", reg.names().join(", ")))?,
        None => reg
            .default_for(&g, seed)
            .ok_or_else(|| anyhow!("no solver for this input"))?,
    };
    let yes = s.solve(&g, &w)?;
    let text = if yes { "trivial" } else { "nontrivial" };
    Ok(yes_no(
        yes,
        text,
        json!({ "trivial": yes, "solver": s.name() }),
    ))
}

fn grammar(cmd: &GrammarCmd) -> Result<Outcome> {
    match cmd {
        GrammarCmd::Cnf { grammar } => {
            let file = load_grammar_file(grammar)?;
            let cnf = file.to_grammar()?.to_cnf();
            let out = vfree::lang::GrammarFile::from_grammar(&cnf, file.involution.clone());
            Ok(ok(cnf.render(), serde_json::to_value(&out)?))
        }
        GrammarCmd::Member { grammar, word } => {
            let g = load_grammar_file(grammar)?.to_grammar()?;
            let w = parse_word(&g.terminals, word)?;
            let yes = g.to_cnf().cyk_member(&w)?;
            let text = if yes { "member" } else { "not a member" };
            Ok(yes_no(yes, text, json!({ "member": yes })))
        }
    }
}

fn gog(cmd: &GogCmd) -> Result<Outcome> {
    match cmd {
        GogCmd::Check { gog } => {
            let g = load_gog(gog)?;
            let reduced = g.is_reduced();
            let mut text = g.describe();
            let _ = writeln!(text, "spanning tree: {}", g.spanning_tree().join(" "));
            let _ = write!(text, "{}", if reduced { "reduced" } else { "not reduced" });
            let doc = json!({
                "valid": true,
                "reduced": reduced,
                "delta": g.delta().names(),
                "spanning_tree": g.spanning_tree(),
                "vertex_orders": g.vertex_orders(),
                "edge_orders": g.edge_orders(),
            });
            Ok(ok(text, doc))
        }
        GogCmd::Reduce { gog, word } => {
            let g = load_gog(gog)?;
            let r = g.reduce_word(&parse_gog_word(&g, word)?);
            let text = render(g.delta(), &r);
            Ok(ok(text.clone(), json!({ "reduced": text })))
        }
        GogCmd::Wp { gog, word, base } => {
            let g = load_gog(gog)?;
            let b = g
                .vertex_index(base)
                .ok_or_else(|| anyhow!("unknown vertex `{base}`"))?;
            let yes = g.gog_wp(b, &parse_gog_word(&g, word)?)?;
            let text = if yes { "trivial" } else { "nontrivial" };
            Ok(yes_no(yes, text, json!({ "trivial": yes })))
        }
    }
}

fn slide(cmd: &SlideCmd) -> Result<Outcome> {
    match cmd {
        SlideCmd::List { gog } => {
            let g = load_gog(gog)?;
            let moves: Vec<_> = enumerate_slides(&g).iter().map(|m| m.named(&g)).collect();
            let text = moves
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(ok(text, json!({ "moves": moves })))
        }
        SlideCmd::Apply { gog, x, y, g: elem } => {
            let g = load_gog(gog)?;
            let m = SlideMove::from_names(&g, x, y, *elem)?;
            let h = apply_slide(&g, &m)?;
            let file = h.to_file();
            Ok(ok(
                serde_json::to_string_pretty(&file)?,
                serde_json::to_value(&file)?,
            ))
        }
    }
}

fn synth(a: &SynthArgs) -> Result<Outcome> {
    let group = load_group(&a.group)?;
    let mut budget = SynthBudget::new(a.max_vertices, a.max_order, a.max_edges, a.max_image_len);
    if let Some(c) = &a.catalog {
        budget = budget.with_catalog(load_catalog_file(c)?);
    }
    let b = group.backend();
    match synthesize(b, &budget) {
        Ok(s) => {
            let gog = s.gog.to_file();
            let hom = s.hom.to_file(&s.gog, b.sigma());
            if let Some(dir) = &a.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("gog.json"), serde_json::to_string_pretty(&gog)?)?;
                std::fs::write(dir.join("hom.json"), serde_json::to_string_pretty(&hom)?)?;
            }
            let mut text = s.gog.describe();
            for img in &hom.images {
                let w = if img.word.is_empty() {
                    "1".to_string()
                } else {
                    img.word.join(" ")
                };
                let _ = writeln!(text, "phi({}) = {w}", img.sym);
            }
            let _ = write!(text, "verified after {} candidates", s.candidates);
            let doc = json!({
                "found": true,
                "gog": gog,
                "hom": hom,
                "structures": s.structures,
                "candidates": s.candidates,
            });
            Ok(ok(text, doc))
        }
        Err(SynthError::BudgetExhausted { candidates }) => Ok(Outcome {
            code: 3,
            text: format!("budget exhausted after {candidates} candidates"),
            json: json!({ "found": false, "candidates": candidates }),
        }),
        Err(e) => bail!(e),
    }
}
