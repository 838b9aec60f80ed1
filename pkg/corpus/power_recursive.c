double power(double x, int y) {
    if (y < 1) {
        return 1;
    }
    if (y < 2) {
        return x;
    }
    return x * power(x, y - 1);
}
