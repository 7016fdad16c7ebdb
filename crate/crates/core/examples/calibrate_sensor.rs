// Calibrates one nerve line from its three poses, then reads a few presses.

use std::error::Error;

use nerve_skin::estimation::{map_p_to_mm, simulate_calibration, FilterState, SensorChannel};
use nerve_skin::nerve::{sense, ContactPoint, ContactSet, NerveLineSpec};
use nerve_skin::rng::{stream, Stream};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = NerveLineSpec::default();
    let filter = FilterState::from_cutoff(5.0, 10).ok_or("bad filter")?;
    let mut rng = stream(42, Stream::Calibration(0));
    let cal = simulate_calibration(&spec, filter, 2.0, 120, &mut rng)?;
    println!(
        "v_max={} v_mid={} v_min={}",
        cal.v_max, cal.v_mid, cal.v_min
    );

    let mut rng = stream(42, Stream::Sensing(0));
    for d in [0.0, 20.0, 40.0, 60.0, 80.0] {
        let mut channel = SensorChannel::new(filter, cal);
        let press = ContactSet::single(ContactPoint::firm(d));
        let mut est = None;
        // Long enough for the filter to settle.
        for tick in 0..60 {
            let reading = sense(&spec, &press, None, 2.0, tick * 10, &mut rng)?;
            est = Some(channel.push(reading));
        }
        let est = est.expect("at least one tick");
        let mapped = map_p_to_mm(est.p, &spec);
        println!(
            "press at {d:>4} mm -> p = {:6.2} ({}) -> {:5.1} mm",
            est.p, est.regime, mapped.position_mm
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
