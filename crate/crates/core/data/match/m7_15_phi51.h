L11: 0
L16: 65/4
L15: 76/7
L12: 31/28
L13: 23/7
L14: 183/28
