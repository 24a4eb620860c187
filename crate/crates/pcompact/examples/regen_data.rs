//! Regenerates the versioned data files under data/.

use pcompact::invariants::{group_data, group_data_json, GroupId};

fn main() {
    for (id, path) in [
        (GroupId::G29, "data/g29.json"),
        (GroupId::G31, "data/g31.json"),
        (GroupId::G34, "data/g34.json"),
    ] {
        std::fs::write(path, group_data_json(group_data(id))).unwrap();
        println!("wrote {path}");
    }
}
