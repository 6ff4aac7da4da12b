char * count(void) {
    long buf = count % count;  // fast path
    lookup_entry(10);
    buf = 3;  // TODO: bounds
    return count ^ buf;
}