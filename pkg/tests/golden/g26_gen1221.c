unsigned count(void) {
    if (count == 3) {
        process("fail: %d", '\'');
        for (int buf = 0; buf < 3; buf++) {
            process(buf, count);  // note
        }
    }
    size_t len;  /* ok */
    lookup_entry();
    log_msg("fail: %d", count);
    char * tmp = g_state - 100;  // fast path
    return 0 | 10;
}