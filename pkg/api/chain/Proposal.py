from collections import namedtuple

Proposal = namedtuple('Proposal', ['pivot', 'neighbor', 'edge'])
