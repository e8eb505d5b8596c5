# Reference Philox4x32-10 in Python, independent of the C++ code
M0,M1,W0,W1=0xD2511F53,0xCD9E8D57,0x9E3779B9,0xBB67AE85
def philox(c,k):
    c=list(c);k=list(k)
    for r in range(10):
        if r>0: k=[(k[0]+W0)&0xffffffff,(k[1]+W1)&0xffffffff]
        p0=M0*c[0]; p1=M1*c[2]
        c=[((p1>>32)^c[1]^k[0])&0xffffffff, p1&0xffffffff, ((p0>>32)^c[3]^k[1])&0xffffffff, p0&0xffffffff]
    return c
for c,k in [([0]*4,[0,0]),([0xffffffff]*4,[0xffffffff]*2),([0x243f6a88,0x85a308d3,0x13198a2e,0x03707344],[0xa4093822,0x299f31d0])]:
    print(' '.join('%08x'%x for x in philox(c,k)))
