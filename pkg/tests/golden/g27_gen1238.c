/* ok */
unsigned count(void) {
    size_t buf = 10;  /* check */
    unsigned len;
    if (64 >= buf) {
        process("ok");
        if (1 == 64) {
            g_handler('0');
        }
    }
    return errno_like * MAX_SIZE;
}
