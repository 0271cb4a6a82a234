//! Command-line front end: key generation, traversal campaigns with
//! per-round verification and CSV metrics export, and standalone path
//! verification.
//!
//! Exit codes: 0 on success, 1 when verification or an engine invariant
//! fails, 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use merkle_traversal::{
    aggregate, leaf_digest, oracle, AggregateRecord, Digest, HashKind, Params, PrngState,
    RoundRecord, Traversal, DEFAULT_MAX_HEIGHT,
};

#[derive(Parser)]
#[command(
    name = "merkle-traversal",
    version,
    about = "Merkle tree roots, authentication paths, and space/time metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the tree and print its root as lowercase hex
    Keygen(TreeArgs),
    /// Emit every authentication path, verify each against the root, and
    /// write per-round or windowed metrics as CSV
    Traverse(TraverseArgs),
    /// Check an exported authentication path file against a root
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TreeArgs {
    /// Tree height H; the tree has 2^H leaves
    #[arg(short = 'H', long)]
    height: u32,

    /// Subtree height h; must divide H
    #[arg(short = 's', long)]
    subtree: u32,

    /// Seed for the leaf key generator, as hex
    #[arg(long)]
    seed: String,

    /// Hash function: sha256 or blake2s
    #[arg(long, default_value = "sha256")]
    hash: String,
}

#[derive(Args)]
struct TraverseArgs {
    #[command(flatten)]
    tree: TreeArgs,

    /// Stop after this many rounds (default: all 2^H - 1)
    #[arg(long)]
    rounds: Option<u64>,

    /// Aggregation window, in rounds
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
    window: u64,

    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Emit per-round rows instead of windowed aggregates
    #[arg(long)]
    raw: bool,

    /// Export the authentication path of this round (0 = the initial path)
    #[arg(long, requires = "path_out")]
    path_round: Option<u64>,

    /// File for --path-round: one hex digest per line, level 0 first
    #[arg(long, requires = "path_round")]
    path_out: Option<PathBuf>,

    /// Flip one byte of the emitted path at this round before verification
    #[arg(long, hide = true)]
    corrupt_round: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Expected root, as hex
    #[arg(long)]
    root: String,

    /// Index of the leaf the path belongs to
    #[arg(long)]
    leaf: u64,

    /// Digest of that leaf, as hex
    #[arg(long)]
    leaf_digest: String,

    /// Path file: one hex digest per line, level 0 first
    #[arg(long)]
    path: PathBuf,

    /// Hash function: sha256 or blake2s
    #[arg(long, default_value = "sha256")]
    hash: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Keygen(args) => cmd_keygen(&args),
        Command::Traverse(args) => cmd_traverse(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    ExitCode::from(code)
}

/// Usage-error helper: print and exit 2.
fn usage(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    2
}

fn height_ceiling() -> Result<u32, String> {
    match std::env::var("MERKLE_MAX_HEIGHT") {
        Ok(raw) => raw
            .parse::<u32>()
            .map_err(|_| format!("MERKLE_MAX_HEIGHT is not a number: {raw:?}")),
        Err(_) => Ok(DEFAULT_MAX_HEIGHT),
    }
}

fn parse_tree_args(args: &TreeArgs) -> Result<(Params, Vec<u8>), String> {
    let hash: HashKind = args
        .hash
        .parse()
        .map_err(|_| format!("unknown hash {:?}; expected sha256 or blake2s", args.hash))?;
    let ceiling = height_ceiling()?;
    let params = Params::with_ceiling(args.height, args.subtree, hash, ceiling)
        .map_err(|e| e.to_string())?;
    let seed = hex::decode(&args.seed).map_err(|_| "seed is not valid hex".to_string())?;
    if seed.is_empty() {
        return Err("seed must not be empty".to_string());
    }
    Ok((params, seed))
}

fn cmd_keygen(args: &TreeArgs) -> u8 {
    let (params, seed) = match parse_tree_args(args) {
        Ok(parsed) => parsed,
        Err(message) => return usage(message),
    };
    match Traversal::keygen(params, &seed) {
        Ok((root, _)) => {
            println!("{root}");
            0
        }
        Err(e) => usage(e),
    }
}

fn cmd_traverse(args: &TraverseArgs) -> u8 {
    let (params, seed) = match parse_tree_args(&args.tree) {
        Ok(parsed) => parsed,
        Err(message) => return usage(message),
    };
    let hash = params.hash();
    let (root, mut traversal) = match Traversal::keygen(params, &seed) {
        Ok(state) => state,
        Err(e) => return usage(e),
    };
    // Independent replay of the leaf digests for the fold check.
    let mut replay = match PrngState::from_seed(hash, &seed) {
        Ok(state) => state,
        Err(e) => return usage(e),
    };

    let total = params.leaf_count() - 1;
    let rounds = args.rounds.unwrap_or(total).min(total);

    // Round 0 is the initial path produced by key generation.
    let leaf0 = leaf_digest(hash, &replay.next_key(hash));
    if let Some(code) = check_and_export(args, &root, params, 0, &leaf0, &traversal.auth_path().digests())
    {
        return code;
    }

    let mut records: Vec<RoundRecord> = Vec::with_capacity(rounds as usize);
    for _ in 0..rounds {
        let out = match traversal.advance() {
            Ok(out) => out,
            Err(e) => {
                eprintln!("engine fault at round {}: {e}", traversal.round() + 1);
                return 1;
            }
        };
        let leaf = leaf_digest(hash, &replay.next_key(hash));
        if let Some(code) =
            check_and_export(args, &root, params, out.leaf, &leaf, &out.path.digests())
        {
            return code;
        }
        records.push(out.record);
    }

    let csv = if args.raw {
        render_raw(&records)
    } else {
        render_aggregated(&aggregate(&records, args.window as usize))
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, csv) {
                return usage(format_args!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{csv}"),
    }
    0
}

/// Verify one emitted path (after the optional corruption hook) and export it
/// if requested. Returns an exit code on failure.
fn check_and_export(
    args: &TraverseArgs,
    root: &Digest,
    params: Params,
    round: u64,
    leaf: &Digest,
    digests: &[Digest],
) -> Option<u8> {
    let mut digests = digests.to_vec();
    if args.corrupt_round == Some(round) {
        digests[0].0[0] ^= 0x01;
    }
    match oracle::verify_path(
        params.hash(),
        params.tree_height(),
        round,
        leaf,
        &digests,
        root,
    ) {
        Ok(true) => {}
        Ok(false) => {
            eprintln!("authentication path for round {round} failed verification");
            return Some(1);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return Some(2);
        }
    }
    if args.path_round == Some(round) {
        let file = args.path_out.as_ref().expect("clap enforces the pairing");
        if let Err(e) = write_path_file(file, &digests) {
            eprintln!("error: cannot write {}: {e}", file.display());
            return Some(2);
        }
        // The digest the path authenticates, for use with `verify`.
        eprintln!("round {round} leaf digest: {leaf}");
    }
    None
}

fn write_path_file(path: &Path, digests: &[Digest]) -> std::io::Result<()> {
    let mut contents = String::with_capacity(digests.len() * 65);
    for digest in digests {
        let _ = writeln!(contents, "{digest}");
    }
    fs::write(path, contents)
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let hash: HashKind = match args.hash.parse() {
        Ok(kind) => kind,
        Err(_) => return usage(format_args!("unknown hash {:?}", args.hash)),
    };
    let root = match parse_digest(&args.root) {
        Ok(digest) => digest,
        Err(message) => return usage(format_args!("bad root: {message}")),
    };
    let leaf = match parse_digest(&args.leaf_digest) {
        Ok(digest) => digest,
        Err(message) => return usage(format_args!("bad leaf digest: {message}")),
    };
    let contents = match fs::read_to_string(&args.path) {
        Ok(contents) => contents,
        Err(e) => return usage(format_args!("cannot read {}: {e}", args.path.display())),
    };
    let mut path = Vec::new();
    for (number, line) in contents.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match parse_digest(line) {
            Ok(digest) => path.push(digest),
            Err(message) => return usage(format_args!("line {}: {message}", number + 1)),
        }
    }
    if path.is_empty() {
        return usage("path file holds no digests");
    }
    let tree_height = path.len() as u32;
    if tree_height < 64 && args.leaf >> tree_height != 0 {
        return usage(format_args!(
            "leaf index {} needs more than {tree_height} path levels",
            args.leaf
        ));
    }
    match oracle::verify_path(hash, tree_height, args.leaf, &leaf, &path, &root) {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("path does not authenticate leaf {} against the root", args.leaf);
            1
        }
        Err(e) => usage(e),
    }
}

fn parse_digest(raw: &str) -> Result<Digest, String> {
    let bytes = hex::decode(raw).map_err(|_| "not valid hex".to_string())?;
    let bytes: [u8; 32] = bytes
        .try_into()
        .map_err(|_| "expected 32 bytes of hex".to_string())?;
    Ok(Digest(bytes))
}

fn render_raw(records: &[RoundRecord]) -> String {
    let mut out = String::with_capacity(24 + records.len() * 16);
    out.push_str("round,leaves,stored_hashes\n");
    for record in records {
        let _ = writeln!(
            out,
            "{},{},{}",
            record.round, record.leaves, record.stored_hashes
        );
    }
    out
}

fn render_aggregated(aggregates: &[AggregateRecord]) -> String {
    let mut out = String::with_capacity(44 + aggregates.len() * 24);
    out.push_str("window_start,max_stored_hashes,mean_leaves\n");
    for aggregate in aggregates {
        let _ = writeln!(
            out,
            "{},{},{:.4}",
            aggregate.window_start, aggregate.max_stored_hashes, aggregate.mean_leaves
        );
    }
    out
}
