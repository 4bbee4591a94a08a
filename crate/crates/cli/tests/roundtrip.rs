//! Printing a document and parsing it back gives the same document.

use proptest::prelude::*;

use quadual::{MarkedQuadrangle, Point2};
use quadual_cli::{parse_document, QuadrangleDocument};

fn document() -> impl Strategy<Value = QuadrangleDocument> {
    let coord = prop_oneof![-1e3..1e3f64, -1.0..1.0f64, (-1e-6..1e-6f64)];
    (prop::array::uniform4((coord.clone(), coord)), prop::option::of("[ -~\\p{L}]{0,12}")).prop_filter_map(
        "degenerate",
        |(v, label)| {
            let q = MarkedQuadrangle::new(v.map(|(x, y)| Point2::new(x, y))).ok()?;
            Some(QuadrangleDocument::new(q, label))
        },
    )
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(doc in document()) {
        let text = doc.to_json();
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
    }
}
