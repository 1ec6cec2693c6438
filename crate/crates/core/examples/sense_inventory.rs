//! Print the bundled sense inventory for মাথা, grouped by class.
//!
//! cargo run --example sense_inventory [inventory.json]

use wsd_kit::sense::{load_sense_inventory, SenseInventory};

fn main() -> wsd_kit::Result<()> {
    let inventory = match std::env::args().nth(1) {
        Some(path) => load_sense_inventory(path.as_ref())?,
        None => SenseInventory::bundled_matha(),
    };
    println!("lemma {}", inventory.lemma);
    for class in &inventory.classes {
        println!("\nclass {} ({})", class.class_id, class.label);
        for id in &class.member_sense_ids {
            let sense = inventory
                .senses
                .iter()
                .find(|s| s.id == *id)
                .expect("validated");
            println!(
                "  [{}] {} {}",
                sense.id,
                sense.pos,
                sense.synonyms.join(", ")
            );
            println!("      {}", sense.gloss);
        }
    }
    Ok(())
}
