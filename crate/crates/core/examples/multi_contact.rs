// Several simultaneous presses: a firm contact hides everything distal to it,
// while soft contacts combine in parallel.

use std::error::Error;

use nerve_skin::nerve::{
    divider_voltage, solve_line_resistance, ContactPoint, NerveLineSpec, ResolvedContacts,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = NerveLineSpec::default();
    let cases: [(&str, Vec<ContactPoint>); 4] = [
        ("open", vec![]),
        ("firm at 30", vec![ContactPoint::firm(30.0)]),
        (
            "firm at 30, 55, 70",
            vec![
                ContactPoint::firm(70.0),
                ContactPoint::firm(30.0),
                ContactPoint::firm(55.0),
            ],
        ),
        (
            "soft at 30 and 60",
            vec![
                ContactPoint::new(30.0, 5_000.0),
                ContactPoint::new(60.0, 5_000.0),
            ],
        ),
    ];
    for (label, points) in cases {
        let r = solve_line_resistance(&spec, &ResolvedContacts::from_points(points));
        let v = divider_voltage(&spec, r);
        match r.ohms() {
            Some(ohm) => println!("{label:<20} {ohm:>9.1} ohm  {v:.4} V"),
            None => println!("{label:<20} {:>9}      {v:.4} V", "open"),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
