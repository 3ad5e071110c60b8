//! Batch front end: parse presentations and resolution dumps, run the
//! constructions and checks, and emit deterministic dumps and reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use xres::cocycle::{automorphism_oracle, build_extension, verify_cocycle, CocycleData, InnerCrossedModule};
use xres::complex::{ComplexMorphism, CrossedComplex};
use xres::constructions::{
    amalgam_resolution, cyclic_resolution_named, cylinder, free_resolution, hnn_resolution,
    lift_morphism, retract_to_vertex, standard_resolution, tensor_product, two_truncated,
    AmalgamData, HnnData,
};
use xres::dump::{parse_complex, write_complex};
use xres::oracle::build_finite_oracle;
use xres::presentation::parse_presentation;
use xres::verify::{check_exactness, group_homology, to_chain_complex};
use xres::words::{ObjectId, Word};

#[derive(Parser)]
#[command(name = "xres", about = "free crossed resolutions of groups and groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutOpt {
    /// Write the resolution dump here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DimOpt {
    /// Maximum dimension (default: env XRES_MAXDIM, then 4)
    #[arg(long)]
    dim: Option<u32>,
}

impl DimOpt {
    fn get(&self) -> u32 {
        self.dim
            .or_else(|| std::env::var("XRES_MAXDIM").ok()?.parse().ok())
            .unwrap_or(4)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Standard free crossed resolution of a finite group
    ResolveStandard {
        /// Presentation file (.gp)
        #[arg(long)]
        presentation: PathBuf,
        /// Enumeration bound for the finite closure
        #[arg(long, default_value_t = 200)]
        bound: usize,
        #[command(flatten)]
        dim: DimOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Tensor product of two reduced resolutions
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        dim: DimOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Cylinder I (x) B on a reduced resolution
    Cylinder {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        dim: DimOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Double mapping cylinder for an amalgamated sum
    Amalgam {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
        /// Images of C's generators in A, e.g. "c -> a^3"
        #[arg(long)]
        i: String,
        /// Images of C's generators in B, e.g. "c -> b^2"
        #[arg(long)]
        j: String,
        #[command(flatten)]
        dim: DimOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// HNN extension along an isomorphism of subgroups
    Hnn {
        /// Resolution (or presentation) of the base group
        #[arg(long)]
        group: PathBuf,
        /// Resolution of the associated subgroup; "self" or "Z" reuse the base
        #[arg(long, default_value = "self")]
        sub: String,
        /// The isomorphism, e.g. "a -> a^-1"
        #[arg(long)]
        iso: String,
        #[command(flatten)]
        dim: DimOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Collapse the connecting arrow of a two-object resolution
    Retract {
        #[arg(long = "in")]
        input: PathBuf,
        /// Object to keep
        #[arg(long)]
        keep: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Verify the crossed complex axioms
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        dim: DimOpt,
    },
    /// Exactness of the integral chain complex and group homology
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        /// Dimensions, e.g. "1,2,3" or "0..3"
        #[arg(long)]
        dims: String,
        /// Also dump the boundary matrices over the group ring
        #[arg(long)]
        matrices: bool,
    },
    /// Generators and relations of the module of identities among relations
    Identities {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Verify non-abelian 2-cocycle data
    CocycleVerify {
        #[command(flatten)]
        cocycle: CocycleArgs,
    },
    /// Build the extension classified by a verified 2-cocycle
    Extension {
        #[command(flatten)]
        cocycle: CocycleArgs,
    },
}

#[derive(Args)]
struct CocycleArgs {
    /// Resolution of G (.xc) or presentation (.gp)
    #[arg(long)]
    resolution: PathBuf,
    /// Presentation of the kernel group K (.gp)
    #[arg(long)]
    kernel: PathBuf,
    /// Automorphism per dimension-1 generator: "a => x -> x^-1 ; b => x -> x"
    #[arg(long)]
    k1: String,
    /// Kernel element per dimension-2 generator: "r => x^2 ; s => 1"
    #[arg(long)]
    k2: String,
    #[command(flatten)]
    dim: DimOpt,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {:#}", e);
        std::process::exit(1);
    }
}

fn emit(c: &CrossedComplex, out: &OutOpt) -> Result<()> {
    let text = write_complex(c);
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(())
}

/// Loads a resolution: a `.xc` dump directly, or a `.gp` presentation
/// through the synthesis policy (free, cyclic one-relator, or finite via
/// the standard resolution).
fn load_resolution(path: &Path, max_dim: u32) -> Result<CrossedComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "xc") || text.starts_with("xres-complex") {
        return Ok(parse_complex(&text)?);
    }
    let p = parse_presentation(&text)?;
    if p.is_free() {
        return Ok(free_resolution(&p)?);
    }
    if p.generators.len() == 1 && p.relators.len() == 1 {
        let w = p.omega(&p.relators[0])?;
        let g = &p.generators[0];
        if w.letters().iter().all(|l| &l.sym == g && !l.inverse) {
            return Ok(cyclic_resolution_named(g.name(), w.len() as u32, max_dim)?);
        }
    }
    match build_finite_oracle(&p, 200) {
        Ok(o) => Ok(standard_resolution(&o, max_dim)?),
        Err(xres::Error::NotFiniteWithinBound { .. }) => Ok(two_truncated(&p)?),
        Err(e) => Err(e.into()),
    }
}

/// Parses "c -> a^3, d -> b" into a name-to-word-text map.
fn parse_images(spec: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in spec.split(',') {
        let (lhs, rhs) = part
            .split_once("->")
            .ok_or_else(|| anyhow!("expected `gen -> word` in `{}`", part))?;
        out.insert(lhs.trim().to_string(), rhs.trim().to_string());
    }
    Ok(out)
}

fn parse_dims(spec: &str) -> Result<Vec<u32>> {
    if let Some((a, b)) = spec.split_once("..") {
        let a: u32 = a.trim().parse()?;
        let b: u32 = b.trim().parse()?;
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(Into::into))
        .collect()
}

fn print_report(report: &xres::complex::CheckReport) -> bool {
    for item in &report.items {
        let flag = if item.pass {
            "ok  "
        } else if item.exact {
            "FAIL"
        } else {
            "FAIL(inconclusive)"
        };
        println!(
            "{} {}{}",
            flag,
            item.description,
            item.witness
                .as_ref()
                .map(|w| format!(" [witness: {}]", w))
                .unwrap_or_default()
        );
    }
    report.passed()
}

fn cocycle_inputs(args: &CocycleArgs) -> Result<(CrossedComplex, InnerCrossedModule, CocycleData)> {
    let res = load_resolution(&args.resolution, args.dim.get())?;
    let ktext = fs::read_to_string(&args.kernel)
        .with_context(|| format!("reading {}", args.kernel.display()))?;
    let kpres = parse_presentation(&ktext)?;
    let inner = automorphism_oracle(&kpres, 200)?;

    let ktable: BTreeMap<String, xres::words::GeneratorSymbol> = kpres
        .generators
        .iter()
        .map(|g| (g.name().to_string(), g.clone()))
        .collect();
    let parse_k_word = |text: &str| -> Result<Word> {
        let mut lex = xres::presentation::Lexer::new(text);
        Ok(xres::presentation::parse_word(
            &mut lex,
            &ktable,
            Some(ObjectId::base()),
        )?)
    };

    let mut k1 = BTreeMap::new();
    for part in args.k1.split(';') {
        let (gen, images) = part
            .split_once("=>")
            .ok_or_else(|| anyhow!("expected `gen => x -> w; ...` in `{}`", part))?;
        let mut imgs = BTreeMap::new();
        for m in images.split(',') {
            let (x, w) = m
                .split_once("->")
                .ok_or_else(|| anyhow!("expected `x -> word` in `{}`", m))?;
            imgs.insert(x.trim().to_string(), parse_k_word(w.trim())?);
        }
        k1.insert(gen.trim().to_string(), inner.aut_from_images(&imgs)?);
    }
    let mut k2 = BTreeMap::new();
    for part in args.k2.split(';') {
        let (gen, w) = part
            .split_once("=>")
            .ok_or_else(|| anyhow!("expected `rel => word` in `{}`", part))?;
        let elt = inner.k.element_index(&parse_k_word(w.trim())?)?;
        k2.insert(gen.trim().to_string(), elt);
    }
    Ok((res, inner, CocycleData { k1, k2 }))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::ResolveStandard {
            presentation,
            bound,
            dim,
            out,
        } => {
            let text = fs::read_to_string(&presentation)
                .with_context(|| format!("reading {}", presentation.display()))?;
            let p = parse_presentation(&text)?;
            let oracle = build_finite_oracle(&p, bound)?;
            let c = standard_resolution(&oracle, dim.get())?;
            emit(&c, &out)
        }
        Command::Tensor {
            left,
            right,
            dim,
            out,
        } => {
            let d = dim.get();
            let a = load_resolution(&left, d)?;
            let b = load_resolution(&right, d)?;
            emit(&tensor_product(&a, &b, d)?, &out)
        }
        Command::Cylinder { input, dim, out } => {
            let d = dim.get();
            let b = load_resolution(&input, d)?;
            emit(&cylinder(&b, d)?, &out)
        }
        Command::Amalgam {
            a,
            b,
            c,
            i,
            j,
            dim,
            out,
        } => {
            let d = dim.get();
            let ra = load_resolution(&a, d)?;
            let rb = load_resolution(&b, d)?;
            let rc = load_resolution(&c, d)?;
            let lift_dim = rc.max_dim().min(d.saturating_sub(1));
            let lift_i = lift_morphism(&parse_images(&i)?, &rc, &ra, lift_dim, &BTreeMap::new())?;
            let lift_j = lift_morphism(&parse_images(&j)?, &rc, &rb, lift_dim, &BTreeMap::new())?;
            let data = AmalgamData {
                a: ra,
                b: rb,
                c: rc,
                lift_i,
                lift_j,
            };
            emit(&amalgam_resolution(&data, d)?, &out)
        }
        Command::Hnn {
            group,
            sub,
            iso,
            dim,
            out,
        } => {
            let d = dim.get();
            let g = load_resolution(&group, d)?;
            let a = match sub.as_str() {
                "self" | "Z" | "z" => g.clone(),
                path => load_resolution(Path::new(path), d)?,
            };
            let lift_dim = a.max_dim().min(d.saturating_sub(1));
            let lift_k0 = lift_morphism(&parse_images(&iso)?, &a, &g, lift_dim, &BTreeMap::new())?;
            let lift_k1 = if sub == "self" || sub == "Z" || sub == "z" {
                ComplexMorphism::identity(&g)
            } else {
                bail!("general subgroup inclusions need explicit k1 images; use --sub self");
            };
            let data = HnnData {
                g,
                a,
                lift_k0,
                lift_k1,
            };
            emit(&hnn_resolution(&data, d)?, &out)
        }
        Command::Retract { input, keep, out } => {
            let c = load_resolution(&input, 4)?;
            emit(&retract_to_vertex(&c, &ObjectId::new(&keep))?, &out)
        }
        Command::Check { input, dim } => {
            let c = load_resolution(&input, dim.get())?;
            let d = dim.dim.unwrap_or_else(|| c.max_dim());
            let report = c.check_axioms(d)?;
            let passed = print_report(&report);
            println!("axioms to dim {}: {}", d, report.summary());
            if !passed {
                bail!("axiom check failed");
            }
            Ok(())
        }
        Command::Homology {
            input,
            dims,
            matrices,
        } => {
            let c = load_resolution(&input, 6)?;
            let dims = parse_dims(&dims)?;
            match check_exactness(&c, &dims) {
                Ok(report) => println!("integral chain complex: {}", report.summary()),
                Err(xres::Error::NotFinite) | Err(xres::Error::MissingOracle) => {
                    println!("integral chain complex: skipped (needs a finite oracle)")
                }
                Err(e) => return Err(e.into()),
            }
            for (n, h) in group_homology(&c, &dims)? {
                println!("H{}(G) = {}", n, h.display());
            }
            if matrices {
                let oracle = c.oracle().cloned().ok_or(xres::Error::MissingOracle)?;
                let top = dims.iter().max().copied().unwrap_or(0) + 1;
                let cc = to_chain_complex(&c, &oracle, top)?;
                for n in 1..=cc.top() {
                    println!("boundary {} -> {}:", n, n - 1);
                    print!("{}", cc.display_matrix(n));
                }
            }
            Ok(())
        }
        Command::Identities { input } => {
            let c = load_resolution(&input, 4)?;
            let ids = c.identities_presentation()?;
            if ids.generators.is_empty() {
                println!("no identities among relations");
            }
            for (g, v) in &ids.generators {
                println!("generator {} = {}", g.name(), v.display());
            }
            for (h, v) in &ids.relations {
                println!("relation {} = {}", h.name(), v.display());
            }
            Ok(())
        }
        Command::CocycleVerify { cocycle } => {
            let (res, inner, data) = cocycle_inputs(&cocycle)?;
            let report = verify_cocycle(&data, &res, &inner)?;
            let passed = print_report(&report);
            println!("cocycle: {}", report.summary());
            if !passed {
                bail!("cocycle verification failed");
            }
            Ok(())
        }
        Command::Extension { cocycle } => {
            let (res, inner, data) = cocycle_inputs(&cocycle)?;
            let ext = build_extension(&data, &res, &inner)?;
            println!("{}", ext.report());
            Ok(())
        }
    }
}
