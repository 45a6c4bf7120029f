use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kal1_core::binmat::BitVector;
use kal1_core::drbg::{Drbg, Seed, SEED_LEN};
use kal1_core::goppa::CodeParams;
use kal1_core::kal1::{PrivateKeyFile, PublicKey, Scheme, SeedPolicy};
use kal1_core::{isd, kat, Error};

mod bench;

/// Kal1 / Niederreiter workbench.
///
/// Exit codes: 0 success, 2 malformed input, 3 value out of range,
/// 4 decoding failure, 5 known-answer mismatch, 1 anything else.
#[derive(Debug, Parser)]
#[command(name = "kal1", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair, writing <out>.pk and <out>.sk.
    Keygen {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, default_value = "kal1")]
        scheme: String,
        /// 32 hex digits; drawn from the system entropy source if omitted.
        #[arg(long)]
        seed: Option<String>,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a raw message file with a public key.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a raw ciphertext file with a private key.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Describe a public or private key file.
    Inspect {
        #[arg(long)]
        key: PathBuf,
    },
    /// Known-answer test records.
    Kat {
        #[command(subcommand)]
        action: KatAction,
    },
    /// Public-key sizes and timings for every scheme.
    Bench {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prange attack calibration and rank report on a generated Kal1 key.
    Probe {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        seed: Option<String>,
        /// Single-iteration attack trials.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Column subsets sampled for the rank report.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Allow n above the toy limit.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Subcommand)]
enum KatAction {
    Generate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = 16)]
        count: usize,
        #[arg(long)]
        kat: PathBuf,
    },
    Verify {
        #[arg(long)]
        kat: PathBuf,
    },
}

/// Code parameters. `--n`, `--t` and `--m` go together; `--k` is optional
/// and must equal `n - m*t`.
#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Debug, Args)]
struct PolicyArgs {
    /// Number of ones in a kal1-s1 seed row.
    #[arg(long)]
    sparse_weight: Option<usize>,
    /// First position of a kal1-s2 run.
    #[arg(long)]
    run_start: Option<usize>,
    /// Length of a kal1-s2 run.
    #[arg(long)]
    run_len: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::Format(_)) => 2,
            CliError::Core(Error::Range(_)) => 3,
            CliError::Core(Error::DecodingFailure) => 4,
            CliError::Core(Error::KatMismatch { .. }) => 5,
            _ => 1,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Io(..) => "IoError",
            CliError::Usage(_) => "UsageError",
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(p, e) => format!("{}: {e}", p.display()),
            CliError::Usage(s) => s.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

impl ParamArgs {
    fn resolve(&self, default: (usize, usize, usize)) -> CliResult<CodeParams> {
        let p = match (self.n, self.t, self.m) {
            (None, None, None) => CodeParams::with_length(default.0, default.1, default.2)?,
            (Some(n), Some(t), Some(m)) => CodeParams::with_length(n, t, m)?,
            _ => return Err(CliError::Usage("--n, --t and --m must be given together".into())),
        };
        if let Some(k) = self.k {
            if k != p.k {
                return Err(Error::Parameter(format!("k = {k} but n - m*t = {}", p.k)).into());
            }
        }
        Ok(p)
    }
}

impl PolicyArgs {
    fn for_scheme(&self, scheme: Scheme) -> CliResult<SeedPolicy> {
        let run = self.run_start.is_some() || self.run_len.is_some();
        let policy = match scheme {
            Scheme::Niederreiter | Scheme::Kal1 if self.sparse_weight.is_none() && !run => SeedPolicy::Dense,
            Scheme::Kal1S1 if !run => match self.sparse_weight {
                Some(w) => SeedPolicy::Sparse(w),
                None => return Err(Error::Policy("kal1-s1 needs --sparse-weight".into()).into()),
            },
            Scheme::Kal1S2 if self.sparse_weight.is_none() => match (self.run_start, self.run_len) {
                (Some(start), Some(len)) => SeedPolicy::Run { start, len },
                _ => return Err(Error::Policy("kal1-s2 needs --run-start and --run-len".into()).into()),
            },
            _ => return Err(Error::Policy(format!("policy flags do not apply to scheme {scheme}")).into()),
        };
        Ok(policy)
    }
}

const TOY: (usize, usize, usize) = (16, 2, 4);
const CLASSIC: (usize, usize, usize) = (1024, 50, 10);

fn seed_or_entropy(seed: &Option<String>) -> CliResult<Seed> {
    match seed {
        Some(s) => Ok(s.parse()?),
        None => {
            let mut b = [0u8; SEED_LEN];
            getrandom::getrandom(&mut b)
                .map_err(|e| CliError::Usage(format!("system entropy source unavailable: {e}")))?;
            Ok(Seed(b))
        }
    }
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn write(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Keygen { params, policy, scheme, seed, out } => {
            let params = params.resolve(CLASSIC)?;
            let scheme: Scheme = scheme.parse()?;
            let policy = policy.for_scheme(scheme)?;
            let seed = seed_or_entropy(&seed)?;
            let (file, pk, _) = PrivateKeyFile::create(scheme, params, policy, seed)?;
            let (pk_path, sk_path) = (with_ext(&out, "pk"), with_ext(&out, "sk"));
            write(&pk_path, &pk.to_bytes())?;
            write(&sk_path, &file.to_bytes())?;
            println!("public key: {} bits", pk.payload_bits());
            println!("wrote {} and {}", pk_path.display(), sk_path.display());
        }
        Command::Encrypt { key, input, out } => {
            let pk = PublicKey::from_bytes(&read(&key)?)?;
            let c = pk.encrypt_bytes(&read(&input)?)?;
            write(&out, &c.to_bytes_msb())?;
        }
        Command::Decrypt { key, input, out } => {
            let file = PrivateKeyFile::from_bytes(&read(&key)?)?;
            let (pk, sk) = file.regenerate()?;
            let c = BitVector::from_bytes_msb(&read(&input)?, pk.ciphertext_bits())?;
            write(&out, &file.decrypt_bytes(&sk, &c)?)?;
        }
        Command::Inspect { key } => inspect(&read(&key)?)?,
        Command::Kat { action: KatAction::Generate { params, seed, count, kat: path } } => {
            let params = params.resolve(TOY)?;
            let seed = seed_or_entropy(&seed)?;
            let records = kat::generate(params, &seed, count)?;
            let header = format!("# kal1 dense, {params}, master seed {seed}, {count} records\n");
            write(&path, (header + &kat::format(&records)).as_bytes())?;
            println!("wrote {} records to {}", records.len(), path.display());
        }
        Command::Kat { action: KatAction::Verify { kat: path } } => {
            let text = String::from_utf8(read(&path)?)
                .map_err(|_| Error::Format(format!("{} is not UTF-8", path.display())))?;
            let records = kat::parse(&text)?;
            kat::verify(&records)?;
            println!("ok: {} records", records.len());
        }
        Command::Bench { params, policy, seed, format } => {
            let params = params.resolve(CLASSIC)?;
            let w = policy.sparse_weight.unwrap_or(10);
            let run = (policy.run_start.unwrap_or(4), policy.run_len.unwrap_or(3));
            let seed = seed_or_entropy(&seed)?;
            let report = bench::run(params, w, run, &seed)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Csv => print!("{}", report.to_csv()),
            }
        }
        Command::Probe { params, seed, trials, samples, allow_large } => {
            let params = params.resolve(TOY)?;
            let seed = seed_or_entropy(&seed)?;
            probe(params, &seed, trials, samples, allow_large)?;
        }
    }
    Ok(())
}

fn inspect(bytes: &[u8]) -> CliResult<()> {
    if bytes.starts_with(b"K1SK") {
        let file = PrivateKeyFile::from_bytes(bytes)?;
        let (pk, _) = file.regenerate()?;
        println!("kind: private key");
        println!("scheme: {}", file.scheme);
        println!("params: {}", file.params);
        println!("policy: {}", describe_policy(&file.policy));
        println!("seed: {}", file.seed);
        println!("public key checksum: {:08x}", file.checksum);
        println!("public key: {} bits", pk.payload_bits());
    } else {
        let pk = PublicKey::from_bytes(bytes)?;
        println!("kind: public key");
        println!("scheme: {}", pk.scheme());
        println!("params: {}", pk.params());
        println!("public key: {} bits", pk.payload_bits());
        if let Some(k) = pk.to_kal1() {
            println!("seed row: {}", k.seed_row());
        }
        let codec = pk.codec()?;
        println!("message: {} bits ({} bytes)", codec.msg_bits(), codec.msg_bytes());
        println!("ciphertext: {} bits", pk.ciphertext_bits());
        println!("checksum: {:08x}", pk.checksum());
    }
    Ok(())
}

fn describe_policy(p: &SeedPolicy) -> String {
    match p {
        SeedPolicy::Dense => "dense".into(),
        SeedPolicy::Sparse(w) => format!("sparse, weight {w}"),
        SeedPolicy::Run { start, len } => format!("run, start {start}, length {len}"),
    }
}

fn probe(params: CodeParams, seed: &Seed, trials: usize, samples: usize, allow_large: bool) -> CliResult<()> {
    let mut rng = Drbg::new(seed);
    let (pk, sk, npk) = kal1_core::kal1::keygen(params, SeedPolicy::Dense, &mut rng)?;
    let h = npk.h_prime_t().transpose();
    let codec = kal1_core::cw::CwCodec::new(params.n, params.t)?;
    let mut hits = 0usize;
    for _ in 0..trials {
        let e = codec.encode_bytes(&codec.random_message(&mut rng))?;
        let inst = isd::IsdInstance::new(h.clone(), npk.syndrome(&e)?, params.t)?;
        if let isd::IsdOutcome::Found { error, .. } = isd::prange(&inst, 1, &mut rng, allow_large)? {
            if error == e {
                hits += 1;
            }
        }
    }
    let p = isd::prange_success_probability(params.n, params.k, params.t);
    let rate = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
    let se = (p * (1.0 - p) / trials.max(1) as f64).sqrt();
    println!("params: {params}");
    println!("prange single-iteration success: {hits}/{trials} = {rate:.4}");
    println!("analytic C(n-k,t)/C(n,t): {p:.4} (standard error {se:.4})");
    println!("deviation: {:.2} standard errors", if se > 0.0 { (rate - p).abs() / se } else { 0.0 });
    print!("{}", isd::rank_report(&pk.expand(), &sk, samples, &mut rng)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("error: 1 UsageError");
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {} {}", e.code(), e.name());
            eprintln!("{}", e.detail());
            ExitCode::from(e.code())
        }
    }
}
