use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_superquiver")
}

fn workdir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("superquiver-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(dir: &Path, file: &str, text: &str) -> PathBuf {
    let p = dir.join(file);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&std::ffi::OsStr]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const LOOP: &str = "\
vertex v sdim 1|1
edge e v -> v
straces maxlen 3
oracle degree e=2 compare maxlen 2
";

#[test]
fn loop_job_passes() {
    let d = workdir("loop");
    let job = write(&d, "loop.job", LOOP);
    let csv = d.join("out.csv");
    let o = run(&[job.as_os_str(), "--csv".as_ref(), csv.as_os_str()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("str(")).count(), 3);
    assert!(out.contains("n=(2) basis=8 ssi=2 si=2 span=2 PASS"), "{out}");
    let csv = std::fs::read_to_string(csv).unwrap();
    assert_eq!(
        csv,
        "multidegree,basis_size,ssi_dim,si_dim,span_dim,verdict\n\"(2)\",8,2,2,2,PASS\n"
    );
}

#[test]
fn canonical_form_is_a_fixed_point() {
    let d = workdir("canon");
    let job = write(
        &d,
        "k.job",
        "vertex a sdim 2|0   # source\nvertex b sdim 2|0 parity 1\nedge e1 a -> b\nedge e2 a -> b\n\
         poly d = det(e1)\ncheck weight b=+1 a=-1 poly d\noracle upto 1\n",
    );
    let first = stdout(&run(&[job.as_os_str(), "--canonical".as_ref()]));
    let again = write(&d, "k2.job", &first);
    let second = stdout(&run(&[again.as_os_str(), "--canonical".as_ref()]));
    assert_eq!(first, second);
    assert!(first.contains("check weight a=-1 b=+1 poly d"), "{first}");
}

#[test]
fn weight_check_on_kronecker() {
    let d = workdir("kron");
    let job = write(
        &d,
        "k.job",
        "vertex a sdim 2|0\nvertex b sdim 2|0\nedge e1 a -> b\nedge e2 a -> b\n\
         poly detE1 = det(e1)\ncheck weight a=-1 b=+1 poly detE1\n",
    );
    let o = run(&[job.as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("WEIGHT OK"));
}

#[test]
fn wrong_weight_exits_one() {
    let d = workdir("wrong");
    let job = write(
        &d,
        "k.job",
        "vertex a sdim 2|0\nvertex b sdim 2|0\nedge e1 a -> b\nedge e2 a -> b\n\
         poly detE1 = det(e1)\ncheck weight a=+1 b=-1 poly detE1\n",
    );
    assert_eq!(run(&[job.as_os_str()]).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two_with_location() {
    let d = workdir("bad");
    let job = write(&d, "bad.job", "vertex a sdim 1|0\nedge e a -> nowhere\n");
    let o = run(&[job.as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.job:2:13: unknown vertex `nowhere`"), "{err}");

    let job = write(&d, "parity.job", "vertex a sdim 1|1 parity 2\n");
    let o = run(&[job.as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parity.job:1:26"));

    let o = run(&[d.join("missing.job").as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["--no-such-flag".as_ref()]).status.code(), Some(2));
}

#[test]
fn strict_cap_exits_three() {
    let d = workdir("cap");
    let job = write(&d, "c.job", "vertex v sdim 2|1\nedge e v -> v\noracle degree e=3\n");
    let loose = run(&[job.as_os_str(), "--cap".as_ref(), "5".as_ref()]);
    assert_eq!(loose.status.code(), Some(0));
    assert!(stdout(&loose).contains("INCONCLUSIVE"));
    let strict = run(&[job.as_os_str(), "--cap".as_ref(), "5".as_ref(), "--strict".as_ref()]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn homext_reads_rep_files() {
    let d = workdir("homext");
    write(&d, "v.rep", "sdim a 1|1\nsdim b 1|0\nmap e1 = [1 0]\nmap e2 = [0 1]\n");
    write(&d, "w.rep", "sdim a 1|0\nsdim b 0|1\n");
    let job = write(
        &d,
        "h.job",
        "vertex a sdim 1|1\nvertex b sdim 1|1\nedge e1 a -> b\nedge e2 a -> b\nhomext v.rep w.rep\nhomext v.rep v.rep\n",
    );
    let o = run(&[job.as_os_str()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(out.matches("doubled quiver cross-check: PASS").count(), 2, "{out}");

    let job = write(&d, "m.job", "vertex a sdim 1|0\nvertex b sdim 1|0\nedge e1 a -> b\nedge e2 a -> b\nhomext v.rep nope.rep\n");
    assert_eq!(run(&[job.as_os_str()]).status.code(), Some(2));
}
