"""Category-colored modular operads and the degree-zero G-CohFT."""
