//! Regenerate the figure set (four SVG plots and the area-ratio table).

fn main() -> evolutoids::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    for path in evolutoids::figures::run_figure_suite(&dir, 2048)? {
        println!("{}", path.display());
    }
    Ok(())
}
