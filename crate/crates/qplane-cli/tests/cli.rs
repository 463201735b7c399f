//! End-to-end tests that drive the compiled binary the way a shell user
//! would, pinning output byte-for-byte.

use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn qplane(args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qplane"));
    cmd.args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("failed to spawn the qplane binary");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("stdin handle")
            .write_all(text.as_bytes())
            .expect("failed to write to the child's stdin");
    }
    let out = child.wait_with_output().expect("failed to wait for the qplane binary");
    Run {
        stdout: String::from_utf8(out.stdout).expect("stdout is not UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is not UTF-8"),
        code: out.status.code().unwrap_or(-1),
    }
}

/// Runs to completion and returns stdout.
fn ok(args: &[&str]) -> String {
    let run = qplane(args, None);
    assert_eq!(run.code, 0, "args {args:?} failed with stderr: {}", run.stderr);
    assert!(run.stderr.is_empty(), "unexpected stderr for {args:?}: {}", run.stderr);
    run.stdout
}

/// Fails with exit code 1 and returns the stderr error document.
fn fail(args: &[&str]) -> String {
    let run = qplane(args, None);
    assert_eq!(run.code, 1, "args {args:?} unexpectedly succeeded: {}", run.stdout);
    assert!(run.stdout.is_empty(), "unexpected stdout for {args:?}: {}", run.stdout);
    run.stderr
}

#[test]
fn normalize_applies_the_commutation_rule() {
    assert_eq!(ok(&["normalize", "x*y"]), "q*y*x\n");
    assert_eq!(ok(&["--format", "json", "normalize", "x*y"]), "{\"element\":\"q*y*x\"}\n");
    assert_eq!(
        ok(&["--format", "json", "normalize", "(x + y)^2"]),
        "{\"element\":\"y^2 + (q + 1)*y*x + x^2\"}\n"
    );
    // At a root of unity the scalar arithmetic reduces modulo the
    // cyclotomic polynomial.
    assert_eq!(ok(&["--field", "cyclotomic:3", "normalize", "q^2"]), "-q - 1\n");
}

#[test]
fn mul_expands_products_in_the_canonical_basis() {
    assert_eq!(ok(&["mul", "x + y", "x - y"]), "-y^2 + (-q + 1)*y*x + x^2\n");
}

#[test]
fn printed_output_parses_back_to_itself() {
    // Covers negative leading terms, parenthesized scalar factors, and
    // scalar division, all of which the grammar must round-trip.
    let sources = [
        "q*y*x",
        "-y^2 + (-q + 1)*y*x + x^2",
        "1/(q^2 - q)*y",
        "y^2 + (q + 1)*y*x + x^2",
    ];
    for src in sources {
        let printed = ok(&["normalize", src]);
        assert_eq!(printed, format!("{src}\n"), "'{src}' is not in canonical form");
        let reprinted = ok(&["normalize", printed.trim_end()]);
        assert_eq!(reprinted, printed, "'{src}' drifted after one round trip");
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args =
        ["--format", "json", "isotropy", "--sigma", "toric:1,1", "(1-q^2)*y^2*x", "(q^3-1)*y*x^3"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn validate_reports_compatibility_and_the_residual() {
    assert_eq!(ok(&["validate", "--sigma", "toric:q,1", "x", "0"]), "valid\n");
    assert_eq!(
        ok(&["--format", "json", "validate", "--sigma", "toric:q,1", "x", "0"]),
        "{\"residual\":null,\"valid\":true}\n"
    );
    assert_eq!(
        ok(&["validate", "--sigma", "toric:q,5", "y", "0"]),
        "invalid: residual = (-q + 5)*y^2\n"
    );
    assert_eq!(
        ok(&["--format", "json", "validate", "--sigma", "toric:q,5", "y", "0"]),
        "{\"residual\":\"(-q + 5)*y^2\",\"valid\":false}\n"
    );
}

#[test]
fn inner_and_is_inner_are_mutually_inverse() {
    assert_eq!(
        ok(&["--format", "json", "inner", "--sigma", "toric:1,1", "x^3 + y^2"]),
        "{\"dx\":\"(-q^2 + 1)*y^2*x\",\"dy\":\"(q^3 - 1)*y*x^3\"}\n"
    );
    let images = ["(-q^2 + 1)*y^2*x", "(q^3 - 1)*y*x^3"];
    assert_eq!(
        ok(&["is_inner", "--sigma", "toric:1,1", images[0], images[1]]),
        "inner, witness = y^2 + x^3\n"
    );
    assert_eq!(
        ok(&["--format", "json", "is_inner", "--sigma", "toric:1,1", images[0], images[1]]),
        "{\"inner\":true,\"witness\":\"y^2 + x^3\"}\n"
    );
}

#[test]
fn decompose_splits_off_the_inner_part() {
    // The commutator with w = -1/(q - 1)*y produces the y*x term, leaving
    // the diagonal part lambda1 = 1 acting on x.
    assert_eq!(
        ok(&["decompose", "--sigma", "toric:1,1", "x + y*x", "0"]),
        "w = -1/(q - 1)*y\n\
         a_poly = []\n\
         b_poly = []\n\
         mn = (0, 0)\n\
         lambda1 = 1\n\
         lambda2 = 0\n"
    );
    assert_eq!(
        ok(&["--format", "json", "decompose", "--sigma", "toric:1,1", "x", "0"]),
        "{\"a_poly\":[],\"b_poly\":[],\"lambda1\":\"1\",\"lambda2\":\"0\",\"mn\":[0,0],\"w\":\"0\"}\n"
    );
}

#[test]
fn isotropy_of_an_inner_derivation_lists_the_witness_characters() {
    // The derivation is inner from w = x^3 + y^2, so the isotropy group is
    // the joint kernel of the characters (3, 0) and (0, 2).
    let args = ["isotropy", "--sigma", "toric:1,1", "(1-q^2)*y^2*x", "(q^3-1)*y*x^3"];
    assert_eq!(
        ok(&args),
        "lattice = {(0, 2), (3, 0)}\n\
         invariant_factors = (1, 6)\n\
         is_finite = true\n\
         order = 6\n\
         flip_part = none\n"
    );
    let mut json_args = vec!["--format", "json"];
    json_args.extend_from_slice(&args);
    assert_eq!(
        ok(&json_args),
        "{\"diagonal\":null,\"flip_part\":null,\"invariant_factors\":[1,6],\
         \"is_finite\":true,\"lattice\":[[0,2],[3,0]],\"order\":6}\n"
    );
}

#[test]
fn member_tests_a_single_automorphism() {
    assert_eq!(
        ok(&[
            "--format", "json", "member", "--sigma", "toric:1,1", "--rho", "toric:1,2",
            "(1-q)*y*x", "0",
        ]),
        "{\"member\":false}\n"
    );
    assert_eq!(
        ok(&[
            "--format", "json", "member", "--sigma", "toric:1,1", "--rho", "toric:1,1",
            "(-q^2 + 1)*y^2*x", "(q^3 - 1)*y*x^3",
        ]),
        "{\"member\":true}\n"
    );
}

#[test]
fn flip_twisted_commands_work_at_order_two() {
    // dx = dy = -y^2*x + y*x^2 is the inner derivation from w = y*x.
    let at2 = ["--field", "cyclotomic:2"];
    let images = ["-y^2*x + y*x^2", "-y^2*x + y*x^2"];

    let mut args = at2.to_vec();
    args.extend(["--format", "json", "is_inner", "--sigma", "flip:1,1", images[0], images[1]]);
    assert_eq!(ok(&args), "{\"inner\":true,\"witness\":\"y*x\"}\n");

    let mut args = at2.to_vec();
    args.extend(["--format", "json", "isotropy", "--sigma", "flip:1,1", images[0], images[1]]);
    assert_eq!(
        ok(&args),
        "{\"diagonal\":{\"exponents\":[2],\"order\":2},\
         \"flip_part\":{\"conditions\":[{\"exp\":2,\"kind\":\"mu\",\"rhs\":\"-1\"}]},\
         \"invariant_factors\":null,\"is_finite\":null,\"lattice\":null,\"order\":null}\n"
    );

    // The toric automorphism fixing w is a member; the sign-twisted flip
    // fails the compiled coset conditions.
    for (rho, expected) in [("flip:1,-1", "false"), ("toric:1,1", "true")] {
        let mut args = at2.to_vec();
        args.extend([
            "--format", "json", "member", "--sigma", "flip:1,1", "--rho", rho, images[0],
            images[1],
        ]);
        assert_eq!(ok(&args), format!("{{\"member\":{expected}}}\n"));
    }

    let mut args = at2.to_vec();
    args.extend(["centralizer", "--sigma", "flip:1,q"]);
    assert_eq!(
        ok(&args),
        "toric part: the diagonal family (mu, mu)\n\
         flip part: the family (mu, r*mu) with r = -1\n"
    );

    let mut args = at2.to_vec();
    args.extend(["--format", "json", "twisted_center", "--sigma", "flip:1,1"]);
    assert_eq!(ok(&args), "{\"monomial\":null,\"shape\":\"zero\"}\n");
}

#[test]
fn twisted_center_shapes_cover_all_three_cases() {
    // Generic field, sigma = (q, 1): the center k times the monomial y.
    assert_eq!(ok(&["twisted_center", "--sigma", "toric:q,1"]), "k*y\n");
    assert_eq!(
        ok(&["--format", "json", "--field", "cyclotomic:3", "twisted_center", "--sigma",
            "toric:q,q"]),
        "{\"monomial\":[2,1],\"shape\":\"center_times_monomial\"}\n"
    );
}

#[test]
fn a_dash_argument_reads_one_expression_from_stdin() {
    let run = qplane(&["--field", "cyclotomic:2", "normalize", "-"], Some("x*y"));
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "-y*x\n");

    let run = qplane(&["mul", "-", "-"], Some("x"));
    assert_eq!(run.code, 1);
    assert_eq!(
        run.stderr,
        "{\"code\":\"E_PARSE\",\"message\":\"stdin can stand in for only one expression\"}\n"
    );
}

#[test]
fn errors_carry_stable_codes_and_exit_nonzero() {
    assert_eq!(
        fail(&["normalize", "x +"]),
        "{\"code\":\"E_PARSE\",\"message\":\"syntax error at byte 3: \
         expected a number, 'q', 'x', 'y', or '('\"}\n"
    );
    assert_eq!(
        fail(&["normalize", "x / y"]),
        "{\"code\":\"E_PARSE\",\"message\":\"syntax error at byte 4: \
         division is only defined by nonzero scalar factors\"}\n"
    );
    assert_eq!(
        fail(&["--field", "cyclotomic:1", "normalize", "x"]),
        "{\"code\":\"E_MODE\",\"message\":\"cyclotomic order must be at least 2, got 1\"}\n"
    );
    assert_eq!(
        fail(&["isotropy", "--sigma", "flip:1,1", "x", "0"]),
        "{\"code\":\"E_MODE\",\"message\":\"flip automorphisms require q = -1, \
         but the mode is generic\"}\n"
    );
    assert_eq!(
        fail(&["apply", "y", "0", "x"]),
        "{\"code\":\"E_INCOMPATIBLE\",\"message\":\"images are not sigma-compatible; \
         residual = (-q + 1)*y^2\"}\n"
    );
}
