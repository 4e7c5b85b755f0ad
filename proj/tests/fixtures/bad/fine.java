int ok(int x) {
    return x;
}
