namespace spbw {}
