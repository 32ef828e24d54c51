//! Dose-response: how the infection probability grows with exposure time
//! for different activities and masks in a well-mixed 50 m³ room.
//!
//!     cargo run --example wells_riley

use floorflow::aerosol::PhysicsParams;
use floorflow::risk::infection_probability;
use floorflow::schedule::{Activity, MaskType};

fn main() {
    let p = PhysicsParams::default();
    let volume = 50.0;
    let k = p.loss_rate();

    println!("steady-state concentration from one unmasked talking source; receiver:");
    println!("{:<28} {:>8} {:>8} {:>8}", "", "1 h", "4 h", "8 h");
    for (label, activity, mask) in [
        ("resting, no mask", Activity::Resting, MaskType::NoMask),
        (
            "resting, surgical mask",
            Activity::Resting,
            MaskType::Surgical,
        ),
        ("resting, N95", Activity::Resting, MaskType::N95),
        ("walking, no mask", Activity::Walking, MaskType::NoMask),
    ] {
        let c = p.emission.get(Activity::Talking) / (volume * k);
        let intake = p.breathing.get(activity) * (1.0 - p.mask_inhale.get(mask)) * c;
        let risks: Vec<String> = [1.0, 4.0, 8.0]
            .iter()
            .map(|h| {
                format!(
                    "{:>7.2}%",
                    100.0 * infection_probability(intake * h * 3600.0, p.dose_threshold)
                )
            })
            .collect();
        println!("{label:<28} {}", risks.join(" "));
    }
}
