//! Runs every example once.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[allow(dead_code)]
        #[path = $path]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example();
        }
    };
}

example!(chains, "../examples/chains.rs");
example!(positions, "../examples/positions.rs");
example!(polytopes, "../examples/polytopes.rs");
example!(lemma, "../examples/lemma.rs");
example!(deleted_products, "../examples/deleted_products.rs");
example!(torus, "../examples/torus.rs");
example!(preimage, "../examples/preimage.rs");
example!(linking, "../examples/linking.rs");
example!(borromean, "../examples/borromean.rs");
example!(leibniz, "../examples/leibniz.rs");
example!(reduce, "../examples/reduce.rs");
example!(cli, "../examples/cli.rs");
