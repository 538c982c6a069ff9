macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(concrete_cases, "concrete_cases.rs");
example!(books_and_stars, "books_and_stars.rs");
example!(formula_checks, "formula_checks.rs");
example!(small_ramsey, "small_ramsey.rs");
example!(partition_kernel, "partition_kernel.rs");
example!(witness_extension, "witness_extension.rs");
example!(graph6_io, "graph6_io.rs");
example!(merge_colors, "merge_colors.rs");
example!(cli_cookbook, "cli_cookbook.rs");

#[test]
fn concrete_cases_example_runs() {
    assert_eq!(concrete_cases::run_example().unwrap(), vec![43, 51, 29, 66, 57, 75, 177]);
}

#[test]
fn books_and_stars_example_runs() {
    books_and_stars::run_example().unwrap();
}

#[test]
fn formula_checks_example_runs() {
    formula_checks::run_example().unwrap();
}

#[test]
fn small_ramsey_example_runs() {
    small_ramsey::run_example().unwrap();
}

#[test]
fn partition_kernel_example_runs() {
    partition_kernel::run_example().unwrap();
}

#[test]
fn witness_extension_example_runs() {
    witness_extension::run_example().unwrap();
}

#[test]
fn graph6_io_example_runs() {
    graph6_io::run_example().unwrap();
}

#[test]
fn merge_colors_example_runs() {
    merge_colors::run_example().unwrap();
}

#[test]
fn cli_cookbook_example_runs() {
    cli_cookbook::run_example().unwrap();
}
