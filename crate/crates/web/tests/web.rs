use perm3col_web::{generate_text, ordering_report, solve_text, DRAW_LIMIT};

const PAGE_EXAMPLE: &str = "p perm 6\ns 2 4 6 1 3 5\nl 1 : 1\nl 6 : 2 3\n";

#[test]
fn generated_text_is_repeatable() {
    let a = generate_text(30, 5, 0.7, 0.1, 3).unwrap();
    assert_eq!(a, generate_text(30, 5, 0.7, 0.1, 3).unwrap());
    assert!(a.starts_with("p perm 30\n"));
    assert!(generate_text(0, 5, 0.7, 0.1, 0).is_err());
}

#[test]
fn page_example_solves_and_draws() {
    let report = solve_text(PAGE_EXAMPLE).unwrap();
    assert!(report.feasible);
    assert!(report.verdict.starts_with("s FEASIBLE\n"));
    assert!(report.trace.starts_with("root 6\n"));
    assert!(report.svg.starts_with("<svg"));
    assert_eq!(report.svg.matches("<circle").count(), 6);
    assert!(!report.svg.contains("stroke=\"red\""));
}

#[test]
fn infeasible_instances_report_a_witness() {
    let report = solve_text("p perm 2\ns 2 1\nl 1 : 1\nl 2 : 1\n").unwrap();
    assert!(!report.feasible);
    assert!(report.verdict.starts_with("s INFEASIBLE\nw "));
    assert!(report.svg.contains("<circle"));
}

#[test]
fn large_instances_are_not_drawn() {
    let text = generate_text(DRAW_LIMIT + 1, 1, 1.0, 0.0, 3).unwrap();
    assert!(solve_text(&text).unwrap().svg.is_empty());
}

#[test]
fn ordering_report_describes_the_layers() {
    let report = ordering_report(PAGE_EXAMPLE).unwrap();
    assert!(report.starts_with("root 6, "));
    assert!(report.contains("multi-chain: yes\n"));
    let odd = ordering_report("p perm 5\ns 4 3 2 5 1\n").unwrap();
    assert!(odd.contains("bipartite layers: no, layer 2"));
    assert!(ordering_report("p perm 2\ns 1 2\n").is_err());
    assert!(solve_text("p perm 2\ns 1\n").is_err());
}
