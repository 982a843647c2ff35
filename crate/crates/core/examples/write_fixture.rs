//! Regenerates `fixtures/teams_synthetic.csv`.
fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "fixtures/teams_synthetic.csv".into());
    csfsim::io::write_team_params(&path, &csfsim::synthetic_teams()).expect("write fixture");
}
