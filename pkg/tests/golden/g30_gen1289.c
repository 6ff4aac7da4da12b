/* check */
long count(size_t buf, long len, char *tmp) {
    buf = len % 100;  /* ok */
    lookup_entry(tmp, 2);  /* check */
    if (len == buf) {
        for (int ptr = 0; ptr < 3; ptr++) {
            emit();  // note
            push_back(buf);  /* legacy
   behaviour */
        }
        process();
    }
    count += errno_like;
    return errno_like + len;
}