long count(unsigned buf, int len, int tmp) {
    for (int ptr = 0; ptr < 3; ptr++) {
        process(count, count);
    }
    for (int val = 0; val < 100; val++) {
        unsigned idx = idx & MAX_SIZE;
        size_t total = ptr | ptr;  /* ok */
    }
    push_back(buf, "fail: %d");
    return 100 + idx;
}